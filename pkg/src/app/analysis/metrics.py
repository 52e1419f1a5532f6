from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.stats import rankdata
from sklearn.metrics import cohen_kappa_score, precision_recall_fscore_support

Averaging = Literal["micro", "macro", "weighted"]
AVERAGING_MODES: tuple[str, ...] = ("micro", "macro", "weighted")


@dataclass(frozen=True, slots=True)
class ClassificationScores:
    precision: float
    recall: float
    f1: float
    f05: float


def safe_ratio(numerator: float, denominator: float) -> float:
    """``numerator / denominator``, or 0 when the denominator is 0."""

    return numerator / denominator if denominator else 0.0


def f_beta(tp: int, fp: int, fn: int, beta: float) -> float:
    """F-beta from counts; 0 when precision and recall are both undefined or 0."""

    b2 = beta * beta
    return safe_ratio((1.0 + b2) * tp, (1.0 + b2) * tp + b2 * fn + fp)


def _labels(values: ArrayLike, what: str) -> NDArray[np.int64]:
    array = np.asarray(values)
    if array.ndim != 1:
        raise ValueError(f"{what} must be 1-D")
    if array.size and not np.issubdtype(array.dtype, np.integer):
        if not np.all(np.mod(array, 1) == 0):
            raise ValueError(f"{what} must be integers")
    return array.astype(np.int64)


def auc_roc(confidences: ArrayLike, correct: ArrayLike) -> float:
    """Probability that a random positive outranks a random negative, ties counting half.

    Uses the rank-sum (Mann-Whitney) statistic with midranks for ties.
    """

    scores = np.asarray(confidences, dtype=np.float64)
    labels = np.asarray(correct).astype(bool)
    if scores.ndim != 1 or scores.shape != labels.shape:
        raise ValueError("confidences and labels must be aligned 1-D arrays")
    n_pos = int(labels.sum())
    n_neg = labels.shape[0] - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError(
            f"AUC-ROC needs at least one positive and one negative label, got {n_pos}/{n_neg}"
        )
    ranks = rankdata(scores, method="average")
    rank_sum = math.fsum(ranks[labels])
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def multiclass_metrics(
    true_levels: ArrayLike,
    predicted_levels: ArrayLike,
    averaging: Averaging,
    n_levels: int | None = None,
) -> ClassificationScores:
    """Averaged one-vs-rest precision, recall, F1 and F0.5.

    Classes that appear in neither sequence do not contribute to macro or
    weighted averages. With ``n_levels`` set, labels outside
    ``[0, n_levels)`` are rejected.
    """

    if averaging not in AVERAGING_MODES:
        raise ValueError(f"Unknown averaging '{averaging}'. Expected one of {list(AVERAGING_MODES)}")
    y_true = _labels(true_levels, "true levels")
    y_pred = _labels(predicted_levels, "predicted levels")
    if y_true.shape != y_pred.shape:
        raise ValueError(f"level sequences differ in length: {y_true.shape[0]} vs {y_pred.shape[0]}")
    if y_true.size == 0:
        raise ValueError("multiclass metrics need at least one sample")
    if n_levels is not None:
        for name, values in (("true", y_true), ("predicted", y_pred)):
            if np.any(values < 0) or np.any(values >= n_levels):
                raise ValueError(f"{name} level outside [0, {n_levels})")

    labels = np.union1d(y_true, y_pred)
    precision, recall, f1, _ = precision_recall_fscore_support(
        y_true, y_pred, labels=labels, average=averaging, beta=1.0, zero_division=0
    )
    _, _, f05, _ = precision_recall_fscore_support(
        y_true, y_pred, labels=labels, average=averaging, beta=0.5, zero_division=0
    )
    return ClassificationScores(float(precision), float(recall), float(f1), float(f05))


def cefr_level_report(
    true_levels: ArrayLike,
    predicted_levels: ArrayLike,
    n_levels: int,
) -> dict[str, ClassificationScores]:
    """:func:`multiclass_metrics` under every averaging mode."""

    return {
        mode: multiclass_metrics(true_levels, predicted_levels, mode, n_levels)
        for mode in AVERAGING_MODES
    }


def rmse(predicted: ArrayLike, reference: ArrayLike) -> float:
    a = np.asarray(predicted, dtype=np.float64)
    b = np.asarray(reference, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("rmse needs aligned 1-D arrays")
    if a.size == 0:
        raise ValueError("rmse of an empty sequence is undefined")
    return math.sqrt(math.fsum((a - b) ** 2) / a.size)


def quadratic_weighted_kappa(
    rater_a: Sequence[int] | ArrayLike,
    rater_b: Sequence[int] | ArrayLike,
    n_scores: int,
) -> float | None:
    """Quadratic weighted kappa over scores ``0..n_scores-1``; ``None`` when undefined."""

    a = _labels(rater_a, "scores")
    b = _labels(rater_b, "scores")
    if a.shape != b.shape or a.size == 0:
        raise ValueError("kappa needs aligned non-empty score sequences")
    with warnings.catch_warnings():
        # few samples spread over many score points trip sklearn's target-type heuristics
        warnings.simplefilter("ignore", RuntimeWarning)
        warnings.simplefilter("ignore", UserWarning)
        value = cohen_kappa_score(a, b, labels=np.arange(n_scores), weights="quadratic")
    return float(value) if np.isfinite(value) else None


__all__ = [
    "Averaging",
    "AVERAGING_MODES",
    "ClassificationScores",
    "safe_ratio",
    "f_beta",
    "auc_roc",
    "multiclass_metrics",
    "cefr_level_report",
    "rmse",
    "quadratic_weighted_kappa",
]
