"""Hybrid-marking release simulation and the reports built on it."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numpy.typing import ArrayLike

from src.app.cefr import ConfidenceRecord, ScoreScheme, band_of

from .metrics import auc_roc, quadratic_weighted_kappa, rmse
from .sweep import ReleaseInputs, SweepRow, best_f1_row

logger = logging.getLogger(__name__)

DEFAULT_TARGETS: tuple[float, ...] = (100.0, 99.0, 98.0, 97.0, 96.0, 95.0)


@dataclass(frozen=True, slots=True)
class ReleaseOutcome:
    threshold: float
    pct_released: float
    cefr_agreement: float
    rmse_released: float | None


@dataclass(frozen=True, slots=True)
class ReleaseTargetRow:
    """Best operating point for one agreement target; ``threshold is None`` when none qualifies."""

    target: float
    pct_released: float | None
    cefr_agreement: float | None
    rmse_released: float | None
    threshold: float | None

    @property
    def feasible(self) -> bool:
        return self.threshold is not None


@dataclass(slots=True)
class ReleaseReport:
    rows: list[ReleaseTargetRow] = field(default_factory=list)

    def row_for(self, target: float) -> ReleaseTargetRow:
        for row in self.rows:
            if row.target == target:
                return row
        raise KeyError(target)


@dataclass(frozen=True, slots=True)
class BaselineReport:
    """Unaided automarker: every score released."""

    n: int
    rmse: float
    cefr_agreement: float
    qwk: float | None


@dataclass(frozen=True, slots=True)
class DecisionSummary:
    """Best-F1 operating point of a confidence model plus its AUC-ROC."""

    threshold: float
    accuracy: float
    precision: float
    recall: float
    f1: float
    f05: float
    auc_roc: float | None

    @classmethod
    def from_row(cls, row: SweepRow, auc: float | None) -> "DecisionSummary":
        return cls(
            threshold=row.threshold,
            accuracy=row.accuracy,
            precision=row.precision,
            recall=row.recall,
            f1=row.f1,
            f05=row.f05,
            auc_roc=auc,
        )


def simulate_inputs(inputs: ReleaseInputs, threshold: float) -> ReleaseOutcome:
    released = inputs.confidence >= threshold
    n_released = int(released.sum())
    mismatched_released = int((released & ~inputs.correct).sum())
    if n_released:
        errors = (inputs.am_scores - inputs.fa_scores)[released]
        rmse_released: float | None = math.sqrt(int((errors * errors).sum()) / n_released)
    else:
        rmse_released = None
    return ReleaseOutcome(
        threshold=float(threshold),
        pct_released=100.0 * n_released / inputs.size,
        cefr_agreement=100.0 * (inputs.size - mismatched_released) / inputs.size,
        rmse_released=rmse_released,
    )


def release_simulation(
    records: Sequence[ConfidenceRecord],
    fa_scores: ArrayLike,
    scheme: ScoreScheme,
    threshold: float,
) -> ReleaseOutcome:
    """Swap FA scores in for every candidate whose confidence is below ``threshold``.

    Agreement is the share of candidates whose final band equals their FA
    band; RMSE covers released candidates only and is ``None`` when nothing
    is released.
    """

    return simulate_inputs(ReleaseInputs.from_records(records, fa_scores, scheme), threshold)


def normalize_targets(targets: Iterable[float]) -> tuple[float, ...]:
    """Deduplicate and order agreement targets from strictest to loosest."""

    values = sorted({float(target) for target in targets}, reverse=True)
    if not values:
        raise ValueError("at least one agreement target is required")
    for value in values:
        if not 0.0 <= value <= 100.0:
            raise ValueError(f"agreement targets must lie in [0, 100], got {value}")
    return tuple(values)


def release_report(
    rows: Sequence[SweepRow],
    targets: Iterable[float] = DEFAULT_TARGETS,
) -> ReleaseReport:
    """For each target, the largest release among thresholds meeting that agreement.

    Ties in ``pct_released`` resolve to the lowest threshold.
    """

    report = ReleaseReport()
    for target in normalize_targets(targets):
        feasible = [row for row in rows if row.cefr_agreement >= target]
        if not feasible:
            report.rows.append(ReleaseTargetRow(target, None, None, None, None))
            continue
        best = max(feasible, key=lambda row: (row.pct_released, -row.threshold))
        report.rows.append(
            ReleaseTargetRow(
                target=target,
                pct_released=best.pct_released,
                cefr_agreement=best.cefr_agreement,
                rmse_released=best.rmse_released,
                threshold=best.threshold,
            )
        )
    return report


def automarker_baseline(
    am_scores: ArrayLike,
    fa_scores: ArrayLike,
    scheme: ScoreScheme,
) -> BaselineReport:
    am = np.asarray(am_scores, dtype=np.int64)
    fa = np.asarray(fa_scores, dtype=np.int64)
    if am.ndim != 1 or am.shape != fa.shape:
        raise ValueError("AM and FA scores must be aligned 1-D arrays")
    if am.size == 0:
        raise ValueError("baseline needs at least one candidate")
    agreement = float(np.mean(band_of(am, scheme) == band_of(fa, scheme)))
    return BaselineReport(
        n=int(am.size),
        rmse=rmse(am, fa),
        cefr_agreement=100.0 * agreement,
        qwk=quadratic_weighted_kappa(am, fa, scheme.n_scores),
    )


def decision_summary(
    rows: Sequence[SweepRow],
    records: Sequence[ConfidenceRecord],
    fa_scores: ArrayLike,
    scheme: ScoreScheme,
) -> DecisionSummary:
    inputs = ReleaseInputs.from_records(records, fa_scores, scheme)
    try:
        auc: float | None = auc_roc(inputs.confidence, inputs.correct)
    except ValueError as exc:
        logger.warning("AUC-ROC undefined: %s", exc)
        auc = None
    return DecisionSummary.from_row(best_f1_row(rows), auc)


__all__ = [
    "DEFAULT_TARGETS",
    "ReleaseOutcome",
    "ReleaseTargetRow",
    "ReleaseReport",
    "BaselineReport",
    "DecisionSummary",
    "simulate_inputs",
    "release_simulation",
    "normalize_targets",
    "release_report",
    "automarker_baseline",
    "decision_summary",
]
