"""Command implementations. Each takes fully resolved options and returns an exit status."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence, TypeVar

import numpy as np
from pydantic import ValidationError

from src.app import __version__
from src.app.analysis import (
    GRIDS,
    automarker_baseline,
    build_grid,
    decision_summary,
    normalize_targets,
    release_report,
    run_grid,
    sweep,
)
from src.app.cefr import ScoreScheme, band_of
from src.app.data import GeneratorConfig, Sample, generate, read_dataset, split, summarize_dataset, write_dataset
from src.app.losses import parse_loss
from src.app.nn import ModelConfig, load_model, predict_records, run_suite, save_model, train_on_samples
from src.app.reporting import (
    RunManifest,
    curve_frame,
    decision_frame,
    gradcheck_frame,
    level_frame,
    release_frame,
    render_text,
    sweep_frame,
    write_csv,
    write_manifest,
    write_text,
)

from .config import manifest_config

logger = logging.getLogger(__name__)

T = TypeVar("T")
Options = Mapping[str, Any]


class UsageError(ValueError):
    """Invalid or missing command-line options; reported with exit status 2."""


def _validated(build: Callable[..., T], *args: Any, **kwargs: Any) -> T:
    try:
        return build(*args, **kwargs)
    except (ValidationError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _required(options: Options, key: str, flag: str) -> Any:
    value = options.get(key)
    if value is None:
        raise UsageError(f"the following arguments are required: {flag}")
    return value


def _scheme(options: Options) -> ScoreScheme:
    return _validated(
        ScoreScheme,
        part_max=options["part_max"],
        cut_scores=options["cuts"],
        level_names=options["levels"],
    )


def _out_dir(options: Options) -> Path:
    out = Path(options["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _read_samples(path: str, scheme: ScoreScheme, *, expected_dim: int | None = None) -> list[Sample]:
    samples = read_dataset(path)
    if not samples:
        raise ValueError(f"dataset {path} is empty")
    for sample in samples:
        if not 0 <= sample.fa_score <= scheme.component_max or not 0 <= sample.am_score <= scheme.component_max:
            raise ValueError(f"{path}: sample {sample.sample_id} has scores outside the score scheme")
        if band_of(sample.fa_score, scheme) != sample.fa_level or band_of(sample.am_score, scheme) != sample.am_level:
            raise ValueError(f"{path}: sample {sample.sample_id} has levels inconsistent with the score scheme")
        if expected_dim is not None and len(sample.features) != expected_dim:
            raise ValueError(
                f"{path}: sample {sample.sample_id} has {len(sample.features)} features, model expects {expected_dim}"
            )
    return samples


def _fa_scores(samples: Sequence[Sample]) -> np.ndarray:
    return np.asarray([sample.fa_score for sample in samples], dtype=np.int64)


def _emit(text: str, path: Path) -> None:
    write_text(text, path)
    print(text, end="")


def cmd_gen_data(options: Options) -> int:
    n_candidates = _required(options, "n_candidates", "--n")
    scheme = _scheme(options)
    cfg = _validated(
        GeneratorConfig,
        n_candidates=n_candidates,
        seed=options["seed"],
        score_mean=options["score_mean"],
        score_sd=options["score_sd"],
        am_noise_sd_easy=options["am_noise_sd_easy"],
        am_noise_sd_hard=options["am_noise_sd_hard"],
        hard_fraction=options["hard_fraction"],
        embedding_dim=options["embedding_dim"],
    )
    fractions = options["fractions"]
    if len(fractions) != 3 or any(value < 0 for value in fractions) or abs(sum(fractions) - 1.0) > 1e-9:
        raise UsageError(f"--fractions must be three non-negative values summing to 1, got {list(fractions)}")

    samples = generate(cfg, scheme)
    logger.info("generated dataset\n%s", summarize_dataset(samples, scheme))
    parts = split(samples, fractions, seed=cfg.seed)

    out = _out_dir(options)
    outputs: dict[str, str] = {}
    for name, part in zip(("train", "val", "eval"), parts):
        path = out / f"{name}.csv"
        write_dataset(part, path)
        outputs[name] = str(path)

    manifest = RunManifest(
        command="gen-data",
        version=__version__,
        seeds={"generator": cfg.seed, "split": cfg.seed},
        config=manifest_config(options),
        outputs=outputs,
    )
    write_manifest(manifest, out)
    print(f"wrote {len(parts[0])} train, {len(parts[1])} val, {len(parts[2])} eval samples to {out}")
    return 0


def cmd_train(options: Options) -> int:
    train_path = _required(options, "train", "--train")
    scheme = _scheme(options)
    loss = _validated(
        parse_loss,
        options["loss"],
        alpha=options["alpha"],
        beta=options["beta"],
        weight_scheme=options["weight_scheme"],
    )
    samples = _read_samples(train_path, scheme)
    cfg = _validated(
        ModelConfig.for_scheme,
        options["architecture"],
        scheme,
        input_dim=len(samples[0].features),
        hidden_layers=options["hidden_layers"],
        seed=options["seed"],
        learning_rate=options["learning_rate"],
        epochs=options["epochs"],
        batch_size=options["batch_size"],
        loss=loss,
        epsilon=options["epsilon"],
    )

    result = train_on_samples(cfg, samples)

    out = _out_dir(options)
    model_path = out / "model.txt"
    curve_path = out / "curve.csv"
    save_model(model_path, result.params, cfg, scheme)
    write_csv(curve_frame(result.curve), curve_path)

    # record the kernel shape actually used, defaults included
    resolved = dict(options)
    if cfg.loss.kernel is not None:
        resolved.update(
            alpha=cfg.loss.kernel.alpha,
            beta=cfg.loss.kernel.beta,
            weight_scheme=cfg.loss.kernel.weight_scheme,
        )
    manifest = RunManifest(
        command="train",
        version=__version__,
        seeds={"model": cfg.seed},
        config=manifest_config(resolved),
        inputs={"train": str(train_path)},
        outputs={"model": str(model_path), "curve": str(curve_path)},
    )
    write_manifest(manifest, out)

    if result.curve:
        print(f"{cfg.loss.name}: final epoch loss {result.curve[-1]:.6f}")
    else:
        print(f"{cfg.loss.name}: no training epochs run")
    return 0


def _load_for_eval(options: Options):
    model_path = _required(options, "model", "--model")
    eval_path = _required(options, "eval", "--eval")
    saved = load_model(model_path)
    samples = _read_samples(eval_path, saved.scheme, expected_dim=saved.config.input_dim)
    records = predict_records(saved.params, saved.config, samples, saved.scheme)
    return saved, samples, records, {"model": str(model_path), "eval": str(eval_path)}


def cmd_sweep(options: Options) -> int:
    saved, samples, records, inputs = _load_for_eval(options)
    architecture = options.get("expected_architecture")
    if architecture is not None and architecture != saved.config.architecture:
        raise UsageError(
            f"--architecture {architecture} does not match the model's "
            f"{saved.config.architecture} head ({saved.config.n_classes} classes)"
        )
    steps = options["steps"]
    if steps < 1:
        raise UsageError(f"--steps must be >= 1, got {steps}")

    fa_scores = _fa_scores(samples)
    rows = sweep(records, fa_scores, saved.scheme, steps)
    summary = decision_summary(rows, records, fa_scores, saved.scheme)

    out = _out_dir(options)
    sweep_path = write_csv(sweep_frame(rows), out / "sweep.csv")
    summary_table = decision_frame([(saved.config.loss.name, summary)])
    summary_path = write_csv(summary_table, out / "summary.csv")
    manifest = RunManifest(
        command="sweep",
        version=__version__,
        seeds={"model": saved.config.seed},
        config=manifest_config(options),
        inputs=inputs,
        outputs={"sweep": str(sweep_path), "summary": str(summary_path)},
    )
    write_manifest(manifest, out)
    _emit(render_text(summary_table, title="Best-F1 operating point"), out / "summary.txt")
    return 0


def cmd_release_report(options: Options) -> int:
    targets = _validated(normalize_targets, options["targets"])
    saved, samples, records, inputs = _load_for_eval(options)
    steps = options["steps"]
    if steps < 1:
        raise UsageError(f"--steps must be >= 1, got {steps}")

    fa_scores = _fa_scores(samples)
    am_scores = np.asarray([sample.am_score for sample in samples], dtype=np.int64)
    rows = sweep(records, fa_scores, saved.scheme, steps)
    report = release_report(rows, targets)
    baseline = automarker_baseline(am_scores, fa_scores, saved.scheme)
    table = release_frame([(saved.config.loss.name, report)], baseline)

    out = _out_dir(options)
    csv_path = write_csv(table, out / "release.csv")
    manifest = RunManifest(
        command="release-report",
        version=__version__,
        seeds={"model": saved.config.seed},
        config=manifest_config(options),
        inputs=inputs,
        outputs={"release": str(csv_path), "text": str(out / "release.txt")},
    )
    write_manifest(manifest, out)
    _emit(render_text(table, title="Release at CEFR agreement targets"), out / "release.txt")
    return 0


def cmd_grad_check(options: Options) -> int:
    tolerance = options["tolerance"]
    if not tolerance > 0:
        raise UsageError(f"--tolerance must be > 0, got {tolerance}")
    instances = options["instances"]
    if instances < 1:
        raise UsageError(f"--instances must be >= 1, got {instances}")
    if options["seed"] < 0:
        raise UsageError(f"--seed must be >= 0, got {options['seed']}")

    report = run_suite(options["seed"], tolerance=tolerance, instances=instances)
    table = gradcheck_frame(report)

    out = _out_dir(options)
    csv_path = write_csv(table, out / "gradcheck.csv")
    manifest = RunManifest(
        command="grad-check",
        version=__version__,
        seeds={"instances": options["seed"]},
        config=manifest_config(options),
        outputs={"table": str(csv_path)},
    )
    write_manifest(manifest, out)

    lines = [render_text(table, title=f"Gradient check (tolerance {tolerance:g})")]
    if report.passed:
        lines.append("PASS\n")
    else:
        lines.append("FAIL\n")
        lines.extend(
            f"  {failure.loss} ({failure.check}, K={failure.n_classes}): "
            f"rel error {failure.max_rel_error:.3e} at {failure.worst_coordinate}\n"
            for failure in report.failures
        )
    print("".join(lines), end="")
    return 0 if report.passed else 1


def cmd_compare(options: Options) -> int:
    train_path = _required(options, "train", "--train")
    eval_path = _required(options, "eval", "--eval")
    grid = options["grid"]
    if grid not in GRIDS:
        raise UsageError(f"--grid must be one of {', '.join(GRIDS)}, got '{grid}'")
    if options["jobs"] < 1:
        raise UsageError(f"--jobs must be >= 1, got {options['jobs']}")
    targets = _validated(normalize_targets, options["targets"])
    if options["steps"] < 1:
        raise UsageError(f"--steps must be >= 1, got {options['steps']}")
    scheme = _scheme(options)

    train_samples = _read_samples(train_path, scheme)
    eval_samples = _read_samples(eval_path, scheme, expected_dim=len(train_samples[0].features))
    jobs = _validated(
        build_grid,
        grid,
        scheme,
        input_dim=len(train_samples[0].features),
        weight_scheme=options["weight_scheme"],
        hidden_layers=options["hidden_layers"],
        seed=options["seed"],
        learning_rate=options["learning_rate"],
        epochs=options["epochs"],
        batch_size=options["batch_size"],
        epsilon=options["epsilon"],
    )
    results = run_grid(
        jobs,
        train_samples,
        eval_samples,
        scheme,
        n_steps=options["steps"],
        targets=targets,
        workers=options["jobs"],
    )

    out = _out_dir(options)
    outputs: dict[str, str] = {}
    sections: list[str] = []

    decisions = decision_frame([(result.label, result.decision) for result in results])
    outputs["decisions"] = str(write_csv(decisions, out / "decisions.csv"))
    sections.append(render_text(decisions, title="Best-F1 operating points"))

    if grid == "losses":
        baseline = automarker_baseline(
            [sample.am_score for sample in eval_samples], _fa_scores(eval_samples), scheme
        )
        release = release_frame([(result.label, result.release) for result in results], baseline)
        outputs["release"] = str(write_csv(release, out / "release.csv"))
        sections.insert(0, render_text(release, title="Release at CEFR agreement targets"))

        levels = level_frame([(result.label, result.levels) for result in results if result.levels])
        outputs["levels"] = str(write_csv(levels, out / "levels.csv"))
        sections.append(render_text(levels, title="CEFR level classification"))

    text = "\n".join(sections)
    outputs["text"] = str(out / "compare.txt")
    manifest = RunManifest(
        command="compare",
        version=__version__,
        seeds={"model": options["seed"]},
        config=manifest_config(options),
        inputs={"train": str(train_path), "eval": str(eval_path)},
        outputs=outputs,
    )
    write_manifest(manifest, out)
    _emit(text, out / "compare.txt")
    return 0


COMMANDS: dict[str, Callable[[Options], int]] = {
    "gen-data": cmd_gen_data,
    "train": cmd_train,
    "sweep": cmd_sweep,
    "release-report": cmd_release_report,
    "grad-check": cmd_grad_check,
    "compare": cmd_compare,
}


__all__ = [
    "UsageError",
    "COMMANDS",
    "cmd_gen_data",
    "cmd_train",
    "cmd_sweep",
    "cmd_release_report",
    "cmd_grad_check",
    "cmd_compare",
]
