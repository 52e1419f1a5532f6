"""Command option defaults and config-file loading.

Config files are flat JSON or YAML mappings whose keys are the flag
destinations (``hard_fraction`` for ``--hard-fraction``). A run manifest is
also accepted: its ``config`` block is used.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable, Mapping

try:  # pragma: no cover - optional dependency
    import yaml  # type: ignore
except ImportError:  # pragma: no cover - optional dependency
    yaml = None  # type: ignore

from src.app.analysis import DEFAULT_STEPS, DEFAULT_TARGETS
from src.app.cefr import DEFAULT_CUT_SCORES, DEFAULT_LEVEL_NAMES
from src.app.data import GeneratorConfig
from src.app.losses import DEFAULT_EPSILON
from src.app.nn import DEFAULT_BATCH_SIZE, DEFAULT_EPOCHS, DEFAULT_HIDDEN_LAYERS, DEFAULT_LEARNING_RATE
from src.app.nn.gradcheck import DEFAULT_TOLERANCE

PROJECT_ROOT = Path(__file__).resolve().parents[3]
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "data" / "configs" / "default.json"


def _int_tuple(value: Any) -> tuple[int, ...]:
    if isinstance(value, str):
        parts = [part for part in value.replace(" ", "").split(",") if part]
        return tuple(int(part) for part in parts)
    if isinstance(value, int):
        return (value,)
    return tuple(int(item) for item in value)


def _float_tuple(value: Any) -> tuple[float, ...]:
    if isinstance(value, str):
        return tuple(float(part) for part in value.replace(" ", "").split(",") if part)
    if isinstance(value, (int, float)):
        return (float(value),)
    return tuple(float(item) for item in value)


def _str_tuple(value: Any) -> tuple[str, ...]:
    if isinstance(value, str):
        return tuple(part.strip() for part in value.split(",") if part.strip())
    return tuple(str(item) for item in value)


def _optional_float(value: Any) -> float | None:
    return None if value is None else float(value)


def _optional_str(value: Any) -> str | None:
    return None if value is None else str(value)


_GENERATOR = GeneratorConfig(n_candidates=0, seed=0)

SCHEME_DEFAULTS: dict[str, Any] = {
    "part_max": 20,
    "cuts": DEFAULT_CUT_SCORES,
    "levels": DEFAULT_LEVEL_NAMES,
}

MODEL_DEFAULTS: dict[str, Any] = {
    "architecture": "score",
    "loss": "cce",
    "alpha": None,
    "beta": None,
    "weight_scheme": None,
    "hidden_layers": DEFAULT_HIDDEN_LAYERS,
    "learning_rate": DEFAULT_LEARNING_RATE,
    "epochs": DEFAULT_EPOCHS,
    "batch_size": DEFAULT_BATCH_SIZE,
    "epsilon": DEFAULT_EPSILON,
}

EVAL_DEFAULTS: dict[str, Any] = {"steps": DEFAULT_STEPS, "targets": DEFAULT_TARGETS}

COMMON_DEFAULTS: dict[str, Any] = {"seed": 0, "out": "out"}

COMMAND_DEFAULTS: dict[str, dict[str, Any]] = {
    "gen-data": {
        **COMMON_DEFAULTS,
        **SCHEME_DEFAULTS,
        "n_candidates": None,
        "score_mean": _GENERATOR.score_mean,
        "score_sd": _GENERATOR.score_sd,
        "am_noise_sd_easy": _GENERATOR.am_noise_sd_easy,
        "am_noise_sd_hard": _GENERATOR.am_noise_sd_hard,
        "hard_fraction": _GENERATOR.hard_fraction,
        "embedding_dim": _GENERATOR.embedding_dim,
        "fractions": (0.8, 0.1, 0.1),
    },
    "train": {**COMMON_DEFAULTS, **SCHEME_DEFAULTS, **MODEL_DEFAULTS, "train": None},
    "sweep": {
        **COMMON_DEFAULTS,
        "model": None,
        "eval": None,
        "expected_architecture": None,
        "steps": DEFAULT_STEPS,
    },
    "release-report": {**COMMON_DEFAULTS, "model": None, "eval": None, **EVAL_DEFAULTS},
    "grad-check": {**COMMON_DEFAULTS, "tolerance": DEFAULT_TOLERANCE, "instances": 100},
    "compare": {
        **COMMON_DEFAULTS,
        **SCHEME_DEFAULTS,
        **{key: value for key, value in MODEL_DEFAULTS.items() if key in {
            "weight_scheme", "hidden_layers", "learning_rate", "epochs", "batch_size", "epsilon",
        }},
        **EVAL_DEFAULTS,
        "train": None,
        "eval": None,
        "grid": "losses",
        "jobs": 1,
    },
}

COERCE: dict[str, Callable[[Any], Any]] = {
    "seed": int,
    "out": str,
    "part_max": int,
    "cuts": _int_tuple,
    "levels": _str_tuple,
    "n_candidates": int,
    "score_mean": float,
    "score_sd": float,
    "am_noise_sd_easy": float,
    "am_noise_sd_hard": float,
    "hard_fraction": float,
    "embedding_dim": int,
    "fractions": _float_tuple,
    "architecture": _optional_str,
    "expected_architecture": _optional_str,
    "loss": str,
    "alpha": _optional_float,
    "beta": _optional_float,
    "weight_scheme": _optional_str,
    "hidden_layers": _int_tuple,
    "learning_rate": float,
    "epochs": int,
    "batch_size": int,
    "epsilon": float,
    "train": _optional_str,
    "eval": _optional_str,
    "model": _optional_str,
    "steps": int,
    "targets": _float_tuple,
    "tolerance": float,
    "instances": int,
    "grid": str,
    "jobs": int,
}

KNOWN_KEYS = frozenset(COERCE)


def _load_mapping_from_file(path: Path) -> Mapping[str, Any]:
    text = path.read_text(encoding="utf-8")

    # JSON is a subset of YAML, so try JSON first for clearer error messages.
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        if yaml is None:
            raise ValueError(
                "YAML configuration requires the optional 'pyyaml' dependency"
            ) from None
        data = yaml.safe_load(text)
    if not isinstance(data, Mapping):
        raise ValueError(f"configuration in {path} must be a mapping")
    return data


def load_config(config: str | Path | Mapping[str, Any]) -> dict[str, Any]:
    """Load option values from a mapping, a config file or a run manifest.

    Unknown keys are rejected; values are returned as written.
    """

    mapping = config if isinstance(config, Mapping) else _load_mapping_from_file(Path(config))
    if "command" in mapping and isinstance(mapping.get("config"), Mapping):
        mapping = mapping["config"]
    unknown = sorted(set(mapping) - KNOWN_KEYS)
    if unknown:
        raise ValueError(f"unknown configuration keys: {', '.join(unknown)}")
    return dict(mapping)


def resolve_options(
    command: str,
    file_values: Mapping[str, Any] | None = None,
    flag_values: Mapping[str, Any] | None = None,
) -> dict[str, Any]:
    """Merge built-in defaults < config file < flags for ``command``.

    File keys the command does not use are ignored so one config can serve
    several commands.
    """

    try:
        defaults = COMMAND_DEFAULTS[command]
    except KeyError:
        raise ValueError(f"Unknown command '{command}'") from None

    merged = dict(defaults)
    for source in (file_values or {}, flag_values or {}):
        for key, value in source.items():
            if key in defaults:
                merged[key] = value

    resolved: dict[str, Any] = {}
    for key, value in merged.items():
        if value is None:
            resolved[key] = None
            continue
        try:
            resolved[key] = COERCE[key](value)
        except (TypeError, ValueError):
            raise ValueError(f"invalid value for '{key}': {value!r}") from None
    return resolved


def manifest_config(options: Mapping[str, Any]) -> dict[str, Any]:
    """Options as JSON-ready values (tuples become lists)."""

    return {key: list(value) if isinstance(value, tuple) else value for key, value in sorted(options.items())}


__all__ = [
    "DEFAULT_CONFIG_PATH",
    "COMMAND_DEFAULTS",
    "KNOWN_KEYS",
    "load_config",
    "resolve_options",
    "manifest_config",
]
