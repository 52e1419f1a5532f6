from __future__ import annotations

import json
from pathlib import Path

import pytest

from src.app.cli.main import main
from src.app.data import read_dataset
from src.app.losses import LOSS_NAMES

GOLDEN = Path(__file__).parent / "golden"
MODEL = str(GOLDEN / "binary_model.txt")
EVAL = str(GOLDEN / "eval_small.csv")


def _gen_data(out: Path, *extra: str) -> Path:
    assert main(["gen-data", "--n", "240", "--seed", "3", "--out", str(out), *extra]) == 0
    return out


def _train(data: Path, out: Path, *extra: str) -> Path:
    argv = ["train", "--train", str(data / "train.csv"), "--epochs", "1", "--out", str(out), *extra]
    assert main(argv) == 0
    return out


def test_release_report_matches_golden(tmp_path: Path, capsys) -> None:
    argv = ["release-report", "--model", MODEL, "--eval", EVAL, "--steps", "10", "--targets", "100,80,60"]
    assert main([*argv, "--out", str(tmp_path)]) == 0
    assert (tmp_path / "release.csv").read_text(encoding="utf-8") == (GOLDEN / "release_small.csv").read_text(
        encoding="utf-8"
    )
    printed = capsys.readouterr().out
    assert printed.startswith("Release at CEFR agreement targets\n")
    assert "Raw automarker" in printed
    assert (tmp_path / "release.txt").read_text(encoding="utf-8") == printed


def test_sweep_matches_golden(tmp_path: Path) -> None:
    assert main(["sweep", "--model", MODEL, "--eval", EVAL, "--steps", "10", "--out", str(tmp_path)]) == 0
    for name in ("sweep.csv", "summary.csv"):
        golden = (GOLDEN / name.replace(".csv", "_small.csv")).read_text(encoding="utf-8")
        assert (tmp_path / name).read_text(encoding="utf-8") == golden
    manifest = json.loads((tmp_path / "sweep.manifest.json").read_text(encoding="utf-8"))
    assert manifest["command"] == "sweep"
    assert manifest["config"]["steps"] == 10


def test_sweep_rejects_mismatched_architecture(tmp_path: Path) -> None:
    argv = ["sweep", "--model", MODEL, "--eval", EVAL, "--architecture", "score", "--out", str(tmp_path)]
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_gen_data_is_deterministic(tmp_path: Path) -> None:
    first = _gen_data(tmp_path / "a")
    second = _gen_data(tmp_path / "b")
    for name in ("train.csv", "val.csv", "eval.csv"):
        assert (first / name).read_bytes() == (second / name).read_bytes()

    manifest_path = first / "gen-data.manifest.json"
    before = manifest_path.read_bytes()
    _gen_data(first)
    assert manifest_path.read_bytes() == before

    sizes = [len(read_dataset(first / name)) for name in ("train.csv", "val.csv", "eval.csv")]
    assert sum(sizes) == 240


def test_gen_data_usage_errors(tmp_path: Path, capsys) -> None:
    with pytest.raises(SystemExit) as info:
        main(["gen-data", "--out", str(tmp_path)])
    assert info.value.code == 2
    assert "--n" in capsys.readouterr().err

    with pytest.raises(SystemExit) as info:
        main(["gen-data", "--n", "100", "--hard-fraction", "1.5", "--out", str(tmp_path)])
    assert info.value.code == 2

    with pytest.raises(SystemExit) as info:
        main(["gen-data", "--n", "100", "--fractions", "0.5,0.5,0.5", "--out", str(tmp_path)])
    assert info.value.code == 2


def test_unknown_loss_lists_valid_names(tmp_path: Path, capsys) -> None:
    with pytest.raises(SystemExit) as info:
        main(["train", "--train", str(tmp_path / "missing.csv"), "--loss", "hinge", "--out", str(tmp_path)])
    assert info.value.code == 2
    err = capsys.readouterr().err
    for name in LOSS_NAMES:
        assert name in err


def test_exp_kernel_shape_with_non_positive_weight_is_rejected(tmp_path: Path, capsys) -> None:
    argv = ["train", "--train", str(tmp_path / "missing.csv"), "--loss", "kwocce-exp", "--alpha", "3"]
    with pytest.raises(SystemExit) as info:
        main([*argv, "--out", str(tmp_path)])
    assert info.value.code == 2
    assert "must be < 2" in capsys.readouterr().err


def test_train_records_kernel_defaults(tmp_path: Path) -> None:
    data = _gen_data(tmp_path / "data")
    out = _train(data, tmp_path / "model", "--architecture", "cefr", "--loss", "kwocce-exp")
    manifest = json.loads((out / "train.manifest.json").read_text(encoding="utf-8"))
    assert manifest["config"]["loss"] == "kwocce-exp"
    assert (manifest["config"]["alpha"], manifest["config"]["beta"]) == (1.0, 3.0)
    assert manifest["config"]["weight_scheme"] == "occ_style"
    assert (out / "model.txt").read_text(encoding="utf-8").startswith("hms-confidence-model v1")
    assert (out / "curve.csv").read_text(encoding="utf-8").splitlines()[0] == "epoch,mean_loss"


def test_pipeline_from_generation_to_release(tmp_path: Path) -> None:
    data = _gen_data(tmp_path / "data")
    model = _train(data, tmp_path / "model", "--loss", "kwocce-gaussian")
    report = tmp_path / "report"
    argv = ["release-report", "--model", str(model / "model.txt"), "--eval", str(data / "eval.csv")]
    assert main([*argv, "--steps", "50", "--out", str(report)]) == 0
    lines = (report / "release.csv").read_text(encoding="utf-8").splitlines()
    assert lines[1].startswith("Raw automarker,")
    assert len(lines) == 2 + 6
    assert all(line.startswith("kwocce-gaussian,") for line in lines[2:])


def test_manifest_reruns_a_command(tmp_path: Path) -> None:
    first = tmp_path / "first"
    argv = ["release-report", "--model", MODEL, "--eval", EVAL, "--steps", "10", "--targets", "100,80,60"]
    assert main([*argv, "--out", str(first)]) == 0
    second = tmp_path / "second"
    assert main(["release-report", "--config", str(first / "release-report.manifest.json"), "--out", str(second)]) == 0
    assert (second / "release.csv").read_bytes() == (first / "release.csv").read_bytes()


def test_compare_architectures(tmp_path: Path) -> None:
    data = _gen_data(tmp_path / "data")
    out = tmp_path / "compare"
    argv = ["compare", "--train", str(data / "train.csv"), "--eval", str(data / "eval.csv"), "--grid", "architectures"]
    assert main([*argv, "--epochs", "1", "--steps", "20", "--out", str(out)]) == 0
    decisions = (out / "decisions.csv").read_text(encoding="utf-8").splitlines()
    assert [line.split(",")[0] for line in decisions[1:]] == ["binary", "cefr", "score"]
    assert (out / "compare.manifest.json").exists()


def test_grad_check_exit_status(tmp_path: Path, capsys) -> None:
    assert main(["grad-check", "--instances", "2", "--out", str(tmp_path)]) == 0
    assert capsys.readouterr().out.rstrip().endswith("PASS")

    assert main(["grad-check", "--instances", "2", "--tolerance", "1e-12", "--out", str(tmp_path)]) == 1
    assert "FAIL" in capsys.readouterr().out
    assert (tmp_path / "gradcheck.csv").exists()


def test_runtime_errors_exit_one(tmp_path: Path, capsys) -> None:
    assert main(["sweep", "--model", str(tmp_path / "nope.txt"), "--eval", EVAL, "--out", str(tmp_path)]) == 1
    assert capsys.readouterr().err.startswith("error: ")

    broken = tmp_path / "broken.csv"
    broken.write_text("sample_id,fa_score,am_score,fa_level,am_level,f0\nc01,10,10\n", encoding="utf-8")
    assert main(["sweep", "--model", MODEL, "--eval", str(broken), "--out", str(tmp_path)]) == 1
    assert ":2:" in capsys.readouterr().err


def test_bad_config_file_is_a_usage_error(tmp_path: Path) -> None:
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"steps": 10, "colour": "blue"}), encoding="utf-8")
    with pytest.raises(SystemExit) as info:
        main(["sweep", "--config", str(config), "--model", MODEL, "--eval", EVAL])
    assert info.value.code == 2


def test_verbose_logs_go_to_stderr_once(tmp_path: Path, capsys) -> None:
    _gen_data(tmp_path / "quiet")
    assert "INFO" not in capsys.readouterr().err

    _gen_data(tmp_path / "first", "-v")
    _gen_data(tmp_path / "second", "-v")
    err = capsys.readouterr().err
    assert " - src.app.cli.commands - INFO - generated dataset" in err
    assert err.count("generated dataset") == 2
    assert "Samples: 240" in err
