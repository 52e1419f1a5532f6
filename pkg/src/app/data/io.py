"""Line-oriented dataset files.

Format: a header row, then one comma-separated record per sample with fields
``sample_id, fa_score, am_score, fa_level, am_level, f0 .. f{d-1}``. Reals are
written with 17 significant digits so a read after a write reproduces every
float exactly.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable, Sequence

from .schemas import Sample

BASE_FIELDS: tuple[str, ...] = ("sample_id", "fa_score", "am_score", "fa_level", "am_level")


class DatasetFormatError(ValueError):
    """Malformed dataset record."""

    def __init__(self, path: str | Path, line_number: int, field: str, message: str) -> None:
        super().__init__(f"{path}:{line_number}: field '{field}': {message}")
        self.path = str(path)
        self.line_number = line_number
        self.field = field


def format_real(value: float) -> str:
    return format(value, ".17g")


def _header(n_features: int) -> list[str]:
    return [*BASE_FIELDS, *(f"f{index}" for index in range(n_features))]


def write_dataset(samples: Sequence[Sample], path: str | Path) -> None:
    """Write ``samples`` to ``path``; all samples must share a feature width."""

    widths = {len(sample.features) for sample in samples}
    if len(widths) > 1:
        raise ValueError(f"samples have mixed feature widths: {sorted(widths)}")
    n_features = widths.pop() if widths else 0

    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(_header(n_features))
        for sample in samples:
            writer.writerow(
                [
                    sample.sample_id,
                    sample.fa_score,
                    sample.am_score,
                    sample.fa_level,
                    sample.am_level,
                    *(format_real(value) for value in sample.features),
                ]
            )


def _parse_int(raw: str, *, path: Path, line: int, field: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise DatasetFormatError(path, line, field, f"expected an integer, got '{raw}'") from None


def _parse_real(raw: str, *, path: Path, line: int, field: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise DatasetFormatError(path, line, field, f"expected a real, got '{raw}'") from None
    if not math.isfinite(value):
        raise DatasetFormatError(path, line, field, f"non-finite value '{raw}'")
    return value


def _parse_rows(rows: Iterable[list[str]], path: Path) -> list[Sample]:
    iterator = iter(enumerate(rows, start=1))
    try:
        _, header = next(iterator)
    except StopIteration:
        return []

    if tuple(header[: len(BASE_FIELDS)]) != BASE_FIELDS:
        raise DatasetFormatError(path, 1, "header", f"expected leading columns {list(BASE_FIELDS)}")
    feature_fields = header[len(BASE_FIELDS):]
    if feature_fields != [f"f{index}" for index in range(len(feature_fields))]:
        raise DatasetFormatError(path, 1, "header", "feature columns must be f0..f{d-1}")

    samples: list[Sample] = []
    for line, row in iterator:
        if not row:
            continue
        if len(row) < len(header):
            missing = header[len(row)]
            raise DatasetFormatError(
                path, line, missing, f"record truncated ({len(row)} of {len(header)} fields)"
            )
        if len(row) > len(header):
            raise DatasetFormatError(
                path, line, header[-1], f"record has {len(row)} fields, expected {len(header)}"
            )

        sample_id = row[0].strip()
        if not sample_id:
            raise DatasetFormatError(path, line, "sample_id", "empty identifier")
        ints = [
            _parse_int(row[index], path=path, line=line, field=BASE_FIELDS[index])
            for index in range(1, len(BASE_FIELDS))
        ]
        features = tuple(
            _parse_real(raw, path=path, line=line, field=name)
            for raw, name in zip(row[len(BASE_FIELDS):], feature_fields)
        )
        samples.append(
            Sample(
                sample_id=sample_id,
                features=features,
                fa_score=ints[0],
                am_score=ints[1],
                fa_level=ints[2],
                am_level=ints[3],
            )
        )
    return samples


def read_dataset(path: str | Path) -> list[Sample]:
    """Read a dataset written by :func:`write_dataset`; an empty file yields ``[]``."""

    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as handle:
        return _parse_rows(csv.reader(handle), path)


__all__ = ["read_dataset", "write_dataset", "DatasetFormatError", "BASE_FIELDS", "format_real"]
