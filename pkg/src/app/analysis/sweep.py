"""Confidence-threshold sweeps over automarker release decisions.

A candidate is *released* when its confidence is at or above the threshold.
Released candidates keep their automarker score; withheld ones are re-marked
and receive their fair-average score. A release is a true positive when the
automarker band matches the fair-average band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.app.cefr import ConfidenceRecord, ScoreScheme, band_of

from .metrics import f_beta, safe_ratio

DEFAULT_STEPS = 1000


@dataclass(frozen=True, slots=True)
class SweepRow:
    threshold: float
    tp: int
    fp: int
    tn: int
    fn: int
    precision: float
    recall: float
    f1: float
    f05: float
    accuracy: float
    pct_released: float
    cefr_agreement: float
    rmse_released: float | None

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True, slots=True)
class ReleaseInputs:
    """Aligned per-candidate arrays shared by the sweep and release simulation."""

    confidence: NDArray[np.float64]
    am_scores: NDArray[np.int64]
    fa_scores: NDArray[np.int64]
    correct: NDArray[np.bool_]

    @property
    def size(self) -> int:
        return int(self.confidence.shape[0])

    @classmethod
    def from_records(
        cls,
        records: Sequence[ConfidenceRecord],
        fa_scores: ArrayLike,
        scheme: ScoreScheme,
    ) -> "ReleaseInputs":
        fa = np.asarray(fa_scores, dtype=np.int64)
        if fa.ndim != 1 or fa.shape[0] != len(records):
            raise ValueError(
                f"records and reference scores are misaligned: {len(records)} vs {fa.size}"
            )
        if not records:
            raise ValueError("release analysis needs at least one record")
        am = np.asarray([record.am_score for record in records], dtype=np.int64)
        levels = np.asarray([record.am_level for record in records], dtype=np.int64)
        mismatched = np.flatnonzero(band_of(am, scheme) != levels)
        if mismatched.size:
            records[int(mismatched[0])].check_scheme(scheme)
        confidence = np.asarray([record.confidence for record in records], dtype=np.float64)
        return cls.from_arrays(confidence, am, fa, scheme)

    @classmethod
    def from_arrays(
        cls,
        confidence: ArrayLike,
        am_scores: ArrayLike,
        fa_scores: ArrayLike,
        scheme: ScoreScheme,
    ) -> "ReleaseInputs":
        conf = np.asarray(confidence, dtype=np.float64)
        am = np.asarray(am_scores, dtype=np.int64)
        fa = np.asarray(fa_scores, dtype=np.int64)
        if not (conf.ndim == am.ndim == fa.ndim == 1) or not (conf.shape == am.shape == fa.shape):
            raise ValueError("confidence, AM and FA arrays must be aligned 1-D arrays")
        if conf.size == 0:
            raise ValueError("release analysis needs at least one record")
        if not np.all(np.isfinite(conf)):
            raise ValueError("confidence values must be finite")
        correct = band_of(am, scheme) == band_of(fa, scheme)
        return cls(confidence=conf, am_scores=am, fa_scores=fa, correct=np.asarray(correct))


def thresholds(n_steps: int = DEFAULT_STEPS) -> NDArray[np.float64]:
    """``k / n_steps`` for ``k = 0..n_steps`` inclusive."""

    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    return np.arange(n_steps + 1, dtype=np.float64) / n_steps


def _row(threshold: float, tp: int, fp: int, total_correct: int, n: int, squared: int) -> SweepRow:
    fn = total_correct - tp
    tn = n - total_correct - fp
    released = tp + fp
    return SweepRow(
        threshold=float(threshold),
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        precision=safe_ratio(tp, tp + fp),
        recall=safe_ratio(tp, tp + fn),
        f1=f_beta(tp, fp, fn, 1.0),
        f05=f_beta(tp, fp, fn, 0.5),
        accuracy=(tp + tn) / n,
        pct_released=100.0 * released / n,
        # withheld candidates get their FA score and agree by construction
        cefr_agreement=100.0 * (n - fp) / n,
        rmse_released=math.sqrt(squared / released) if released else None,
    )


def sweep_inputs(inputs: ReleaseInputs, n_steps: int = DEFAULT_STEPS) -> list[SweepRow]:
    """Rows for every threshold on the grid, in ascending threshold order."""

    grid = thresholds(n_steps)
    order = np.argsort(inputs.confidence, kind="stable")
    sorted_conf = inputs.confidence[order]
    correct = inputs.correct[order].astype(np.int64)
    errors = (inputs.am_scores - inputs.fa_scores)[order]

    # suffix sums: entry i covers sorted positions i..n-1
    n = inputs.size
    suffix_correct = np.concatenate((np.cumsum(correct[::-1])[::-1], [0]))
    suffix_squared = np.concatenate((np.cumsum((errors * errors)[::-1])[::-1], [0]))
    first_released = np.searchsorted(sorted_conf, grid, side="left")
    total_correct = int(correct.sum())

    rows: list[SweepRow] = []
    for threshold, start in zip(grid, first_released):
        tp = int(suffix_correct[start])
        fp = int(n - start) - tp
        rows.append(_row(threshold, tp, fp, total_correct, n, int(suffix_squared[start])))
    return rows


def sweep(
    records: Sequence[ConfidenceRecord],
    fa_scores: ArrayLike,
    scheme: ScoreScheme,
    n_steps: int = DEFAULT_STEPS,
) -> list[SweepRow]:
    """Evaluate release decisions at thresholds ``0, 1/n_steps, ..., 1``."""

    return sweep_inputs(ReleaseInputs.from_records(records, fa_scores, scheme), n_steps)


def best_f1_row(rows: Sequence[SweepRow]) -> SweepRow:
    """Row with the highest F1; ties go to the lowest threshold."""

    if not rows:
        raise ValueError("best_f1_row needs at least one sweep row")
    return max(rows, key=lambda row: (row.f1, -row.threshold))


__all__ = [
    "SweepRow",
    "ReleaseInputs",
    "DEFAULT_STEPS",
    "thresholds",
    "sweep",
    "sweep_inputs",
    "best_f1_row",
]
