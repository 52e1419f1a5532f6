"""Versioned plain-text model files.

Layout::

    hms-confidence-model v1 dims=11,32,41 n_classes=41 loss=kwocce-gaussian seed=0
    config architecture=score learning_rate=0.050000000000000003 epochs=20 batch_size=64 epsilon=9.9999999999999995e-08
    kernel kind=gaussian alpha=0.5 beta= weight_scheme=occ_style
    scheme part_max=20 cuts=16,28 levels=L1,L2,L3
    weight 0 11 32
    <one row of reals per line>
    bias 0 32
    <reals>
    ...
    end

Reals use 17 significant digits, so a load after a save reproduces every
parameter bit for bit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from src.app.cefr import ScoreScheme
from src.app.data.io import format_real
from src.app.kernels import KernelSpec
from src.app.losses import LossSpec

from .config import ModelConfig
from .network import ModelParams

logger = logging.getLogger(__name__)

MAGIC = "hms-confidence-model"
FORMAT_VERSION = "v1"


class ModelFormatError(ValueError):
    """Unreadable or version-mismatched model file."""

    def __init__(self, path: str | Path, line_number: int, message: str) -> None:
        super().__init__(f"{path}:{line_number}: {message}")
        self.path = str(path)
        self.line_number = line_number


@dataclass(slots=True)
class SavedModel:
    params: ModelParams
    config: ModelConfig
    scheme: ScoreScheme


def _pairs(tokens: list[str]) -> dict[str, str]:
    fields: dict[str, str] = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got '{token}'")
        fields[key] = value
    return fields


def _row(values: np.ndarray) -> str:
    return " ".join(format_real(float(value)) for value in values)


def save_model(
    path: str | Path,
    params: ModelParams,
    cfg: ModelConfig,
    scheme: ScoreScheme,
) -> None:
    """Write ``params`` with the config and score scheme they were trained under."""

    cfg.check_scheme(scheme)
    dims = ",".join(str(dim) for dim in cfg.layer_dims)
    lines = [
        f"{MAGIC} {FORMAT_VERSION} dims={dims} n_classes={cfg.n_classes} "
        f"loss={cfg.loss.name} seed={cfg.seed}",
        f"config architecture={cfg.architecture} learning_rate={format_real(cfg.learning_rate)} "
        f"epochs={cfg.epochs} batch_size={cfg.batch_size} epsilon={format_real(cfg.epsilon)}",
        "kernel none" if cfg.loss.kernel is None else f"kernel {cfg.loss.kernel.to_record()}",
        f"scheme {scheme.to_record()}",
    ]
    for index, (weight, bias) in enumerate(zip(params.weights, params.biases)):
        lines.append(f"weight {index} {weight.shape[0]} {weight.shape[1]}")
        lines.extend(_row(row) for row in weight)
        lines.append(f"bias {index} {bias.shape[0]}")
        lines.append(_row(bias))
    lines.append("end")

    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info("saved %s model to %s", cfg.loss.name, path)


class _LineReader:
    def __init__(self, path: Path, text: str) -> None:
        self.path = path
        self._lines: Iterator[tuple[int, str]] = enumerate(text.splitlines(), start=1)
        self.line_number = 0

    def next(self, what: str) -> str:
        try:
            self.line_number, line = next(self._lines)
        except StopIteration:
            raise ModelFormatError(
                self.path, self.line_number + 1, f"unexpected end of file, expected {what}"
            ) from None
        return line

    def fail(self, message: str) -> ModelFormatError:
        return ModelFormatError(self.path, self.line_number, message)


def _read_reals(reader: _LineReader, count: int) -> np.ndarray:
    raw = reader.next("a row of reals").split()
    if len(raw) != count:
        raise reader.fail(f"expected {count} reals, got {len(raw)}")
    try:
        values = np.asarray([float(token) for token in raw], dtype=np.float64)
    except ValueError as exc:
        raise reader.fail(f"invalid real: {exc}") from None
    if not np.all(np.isfinite(values)):
        raise reader.fail("parameters must be finite")
    return values


def _expect_block(reader: _LineReader, tag: str, index: int) -> list[int]:
    tokens = reader.next(f"'{tag} {index}'").split()
    if len(tokens) < 2 or tokens[0] != tag or tokens[1] != str(index):
        raise reader.fail(f"expected '{tag} {index}' block header")
    try:
        return [int(token) for token in tokens[2:]]
    except ValueError:
        raise reader.fail(f"invalid {tag} shape") from None


def load_model(path: str | Path) -> SavedModel:
    """Inverse of :func:`save_model`."""

    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(path, 0, f"cannot read model file: {exc}") from exc
    reader = _LineReader(path, text)

    header = reader.next("header").split()
    if len(header) < 2 or header[0] != MAGIC:
        raise reader.fail(f"not a model file (expected '{MAGIC}' header)")
    if header[1] != FORMAT_VERSION:
        raise reader.fail(f"unsupported model format {header[1]}, expected {FORMAT_VERSION}")

    try:
        head = _pairs(header[2:])
        dims = tuple(int(dim) for dim in head["dims"].split(","))
        seed = int(head["seed"])

        config_tokens = reader.next("config line").split()
        if not config_tokens or config_tokens[0] != "config":
            raise reader.fail("expected config line")
        fields = _pairs(config_tokens[1:])

        kernel_line = reader.next("kernel line")
        if not kernel_line.startswith("kernel "):
            raise reader.fail("expected kernel line")
        kernel_record = kernel_line[len("kernel "):]
        kernel = None if kernel_record == "none" else KernelSpec.from_record(kernel_record)
        loss_kind = head["loss"].split("-", 1)[0]

        scheme_line = reader.next("scheme line")
        if not scheme_line.startswith("scheme "):
            raise reader.fail("expected scheme line")
        scheme = ScoreScheme.from_record(scheme_line[len("scheme "):])

        cfg = ModelConfig(
            architecture=fields["architecture"],
            input_dim=dims[0],
            hidden_layers=dims[1:-1],
            n_classes=dims[-1],
            seed=seed,
            learning_rate=float(fields["learning_rate"]),
            epochs=int(fields["epochs"]),
            batch_size=int(fields["batch_size"]),
            loss=LossSpec(kind=loss_kind, kernel=kernel),
            epsilon=float(fields["epsilon"]),
        )
        if cfg.loss.name != head["loss"]:
            raise reader.fail(f"loss '{head['loss']}' does not match kernel record")
        cfg.check_scheme(scheme)
    except ModelFormatError:
        raise
    except (KeyError, ValueError) as exc:
        raise reader.fail(f"invalid model metadata: {exc}") from exc

    weights: list[np.ndarray] = []
    biases: list[np.ndarray] = []
    for index, (fan_in, fan_out) in enumerate(zip(dims[:-1], dims[1:])):
        if _expect_block(reader, "weight", index) != [fan_in, fan_out]:
            raise reader.fail(f"weight {index} shape does not match dims")
        weights.append(np.vstack([_read_reals(reader, fan_out) for _ in range(fan_in)]))
        if _expect_block(reader, "bias", index) != [fan_out]:
            raise reader.fail(f"bias {index} shape does not match dims")
        biases.append(_read_reals(reader, fan_out))

    if reader.next("'end'").strip() != "end":
        raise reader.fail("expected 'end'")
    return SavedModel(params=ModelParams(weights=weights, biases=biases), config=cfg, scheme=scheme)


__all__ = ["save_model", "load_model", "SavedModel", "ModelFormatError", "MAGIC", "FORMAT_VERSION"]
