from __future__ import annotations

import json
from pathlib import Path

import pytest

from src.app.cli.config import (
    COMMAND_DEFAULTS,
    DEFAULT_CONFIG_PATH,
    load_config,
    manifest_config,
    resolve_options,
)
from src.app.reporting import RunManifest, write_manifest


def test_defaults_per_command() -> None:
    options = resolve_options("release-report")
    assert options["steps"] == 1000
    assert options["targets"] == (100.0, 99.0, 98.0, 97.0, 96.0, 95.0)
    assert options["model"] is None

    train = resolve_options("train")
    assert train["hidden_layers"] == (32,)
    assert train["learning_rate"] == 0.05
    assert train["cuts"] == (16, 28)


def test_flags_override_file_values_override_defaults() -> None:
    options = resolve_options("train", {"epochs": 5, "loss": "occ"}, {"epochs": 7})
    assert options["epochs"] == 7
    assert options["loss"] == "occ"
    assert options["batch_size"] == 64


def test_values_are_coerced() -> None:
    options = resolve_options("gen-data", None, {"cuts": "12, 24,30", "levels": "A,B,C,D", "fractions": "1,0,0"})
    assert options["cuts"] == (12, 24, 30)
    assert options["levels"] == ("A", "B", "C", "D")
    assert options["fractions"] == (1.0, 0.0, 0.0)
    assert resolve_options("train", None, {"hidden_layers": ""})["hidden_layers"] == ()
    with pytest.raises(ValueError, match="epochs"):
        resolve_options("train", None, {"epochs": "many"})
    with pytest.raises(ValueError):
        resolve_options("evaluate")


def test_file_keys_for_other_commands_are_ignored() -> None:
    options = resolve_options("grad-check", {"epochs": 3, "tolerance": 1e-3})
    assert "epochs" not in options
    assert options["tolerance"] == 1e-3


def test_unknown_keys_are_rejected(tmp_path: Path) -> None:
    with pytest.raises(ValueError, match="colour"):
        load_config({"seed": 1, "colour": "blue"})
    path = tmp_path / "config.json"
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ValueError):
        load_config(path)


def test_default_config_file_matches_built_in_defaults() -> None:
    values = load_config(DEFAULT_CONFIG_PATH)
    for command in COMMAND_DEFAULTS:
        assert resolve_options(command, values) == resolve_options(command)


def test_manifest_is_accepted_as_config(tmp_path: Path) -> None:
    options = resolve_options("sweep", None, {"model": "m.txt", "eval": "e.csv", "steps": 25})
    manifest = RunManifest(command="sweep", version="0.1.0", config=manifest_config(options))
    path = write_manifest(manifest, tmp_path)
    assert resolve_options("sweep", load_config(path)) == options
    assert json.loads(path.read_text(encoding="utf-8"))["config"]["steps"] == 25


def test_yaml_config(tmp_path: Path) -> None:
    pytest.importorskip("yaml")
    path = tmp_path / "config.yaml"
    path.write_text("epochs: 4\nhidden_layers: [16, 8]\n", encoding="utf-8")
    options = resolve_options("train", load_config(path))
    assert options["epochs"] == 4
    assert options["hidden_layers"] == (16, 8)
