"""Confidence extraction for the three confidence-model architectures.

- ``binary``: two classes (AM band wrong / right); confidence is ``p[1]``.
- ``cefr``: one class per CEFR band; confidence is the probability of the band
  the automarker score falls in.
- ``score``: one class per component score; score probabilities are summed
  within each band before reading off the AM band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .scheme import ScoreScheme, band_of, bin_probabilities

Architecture = Literal["binary", "cefr", "score"]
ARCHITECTURES: tuple[str, ...] = ("binary", "cefr", "score")


@dataclass(frozen=True, slots=True)
class ConfidenceRecord:
    """Confidence the confidence model assigns to one automarker score."""

    sample_id: str
    am_score: int
    am_level: int
    confidence: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.confidence) or not 0.0 <= self.confidence <= 1.0:
            raise ValueError(
                f"{self.sample_id}: confidence must lie in [0, 1], got {self.confidence}"
            )
        if self.am_score < 0 or self.am_level < 0:
            raise ValueError(f"{self.sample_id}: AM score and level must be non-negative")

    @classmethod
    def for_score(cls, sample_id: str, am_score: int, confidence: float, scheme: ScoreScheme) -> "ConfidenceRecord":
        """Record whose level is the band of ``am_score`` under ``scheme``."""

        return cls(
            sample_id=sample_id,
            am_score=int(am_score),
            am_level=band_of(int(am_score), scheme),
            confidence=float(confidence),
        )

    def check_scheme(self, scheme: ScoreScheme) -> None:
        """Raise ``ValueError`` unless ``am_level`` is the band of ``am_score``."""

        expected = band_of(self.am_score, scheme)
        if self.am_level != expected:
            raise ValueError(
                f"{self.sample_id}: am_level {self.am_level} does not match band {expected} of AM score {self.am_score}"
            )


def n_classes_for(architecture: str, scheme: ScoreScheme) -> int:
    """Output width of the classifier head for ``architecture``."""

    if architecture == "binary":
        return 2
    if architecture == "cefr":
        return scheme.bands
    if architecture == "score":
        return scheme.n_scores
    raise ValueError(f"Unknown architecture '{architecture}'. Valid: {', '.join(ARCHITECTURES)}")


def _vector(p: ArrayLike, size: int, what: str) -> NDArray[np.float64]:
    probs = np.asarray(p, dtype=np.float64)
    if probs.ndim != 1 or probs.shape[0] != size:
        raise ValueError(f"{what} expects a {size}-class probability vector, got shape {probs.shape}")
    return probs


def confidence_binary(p: ArrayLike) -> float:
    """Probability of the "AM band correct" class."""

    return float(_vector(p, 2, "binary confidence")[1])


def confidence_cefr_nary(p: ArrayLike, am_level: int) -> float:
    """Probability assigned to the band the automarker predicted."""

    probs = np.asarray(p, dtype=np.float64)
    if probs.ndim != 1:
        raise ValueError("CEFR confidence expects a 1-D probability vector")
    if not 0 <= am_level < probs.shape[0]:
        raise ValueError(f"am_level {am_level} outside [0, {probs.shape[0] - 1}]")
    return float(probs[am_level])


def confidence_score_binned(p: ArrayLike, am_score: int, scheme: ScoreScheme) -> float:
    """Cumulative probability of the AM band over the score classes it contains."""

    probs = _vector(p, scheme.n_scores, "score-binned confidence")
    value = confidence_cefr_nary(bin_probabilities(probs, scheme), band_of(am_score, scheme))
    return min(value, 1.0)


def batch_confidence(
    architecture: str,
    probs: ArrayLike,
    am_scores: ArrayLike,
    scheme: ScoreScheme,
) -> NDArray[np.float64]:
    """Vectorized confidence for a batch of class distributions."""

    probs_arr = np.asarray(probs, dtype=np.float64)
    expected = n_classes_for(architecture, scheme)
    if probs_arr.ndim != 2 or probs_arr.shape[1] != expected:
        raise ValueError(
            f"{architecture} architecture expects {expected} classes, got shape {probs_arr.shape}"
        )
    if architecture == "binary":
        return probs_arr[:, 1].copy()

    levels = np.asarray(band_of(np.asarray(am_scores), scheme)).reshape(-1)
    if levels.shape[0] != probs_arr.shape[0]:
        raise ValueError("am_scores and probs have different sample counts")
    band_probs = probs_arr if architecture == "cefr" else bin_probabilities(probs_arr, scheme)
    confidence = band_probs[np.arange(levels.shape[0]), levels]
    # Binning can overshoot 1 by a rounding error.
    return np.clip(confidence, 0.0, 1.0)


def predicted_levels(architecture: str, probs: ArrayLike, scheme: ScoreScheme) -> NDArray[np.int64]:
    """Argmax CEFR band of each distribution; the binary head has none."""

    probs_arr = np.asarray(probs, dtype=np.float64)
    if architecture == "binary":
        raise ValueError("the binary architecture does not predict CEFR levels")
    band_probs = probs_arr if architecture == "cefr" else bin_probabilities(probs_arr, scheme)
    return np.argmax(band_probs, axis=-1).astype(np.int64)


__all__ = [
    "Architecture",
    "ARCHITECTURES",
    "ConfidenceRecord",
    "n_classes_for",
    "confidence_binary",
    "confidence_cefr_nary",
    "confidence_score_binned",
    "batch_confidence",
    "predicted_levels",
]
