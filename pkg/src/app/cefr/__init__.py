"""Score scheme, CEFR banding and confidence extraction."""

from .confidence import (
    ARCHITECTURES,
    Architecture,
    ConfidenceRecord,
    batch_confidence,
    confidence_binary,
    confidence_cefr_nary,
    confidence_score_binned,
    n_classes_for,
    predicted_levels,
)
from .scheme import DEFAULT_CUT_SCORES, DEFAULT_LEVEL_NAMES, ScoreScheme, band_of, bin_probabilities

__all__ = [
    "ScoreScheme",
    "DEFAULT_CUT_SCORES",
    "DEFAULT_LEVEL_NAMES",
    "band_of",
    "bin_probabilities",
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
