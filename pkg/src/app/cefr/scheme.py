"""Score scheme: component score range and the cut scores that band it into CEFR levels."""

from __future__ import annotations

from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

# Synthetic stand-in cuts over 0-40; operational cut scores are not public.
DEFAULT_CUT_SCORES: tuple[int, ...] = (16, 28)
DEFAULT_LEVEL_NAMES: tuple[str, ...] = ("L1", "L2", "L3")

_RECORD_KEYS = ("part_max", "cuts", "levels")


class ScoreScheme(BaseModel):
    """Two-part exam scored 0..part_max per part, banded at component level.

    Band ``b`` covers the half-open interval ``[lower_b, cut_b)``; the top band
    is closed at :attr:`component_max`.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    part_min: int = 0
    part_max: int = 20
    cut_scores: tuple[int, ...] = DEFAULT_CUT_SCORES
    level_names: tuple[str, ...] = DEFAULT_LEVEL_NAMES

    @field_validator("part_min")
    @classmethod
    def _part_min_zero(cls, value: int) -> int:
        if value != 0:
            raise ValueError("part_min must be 0")
        return value

    @field_validator("part_max")
    @classmethod
    def _part_max_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"part_max must be >= 1, got {value}")
        return value

    @model_validator(mode="after")
    def _check_bands(self) -> "ScoreScheme":
        cuts = self.cut_scores
        if len(cuts) < 1:
            raise ValueError("at least one cut score is required (two bands)")
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise ValueError(f"cut_scores must be strictly ascending, got {list(cuts)}")
        if cuts[0] <= 0 or cuts[-1] > self.component_max:
            raise ValueError(
                f"cut_scores must lie in (0, {self.component_max}], got {list(cuts)}"
            )
        if len(self.level_names) != self.bands:
            raise ValueError(
                f"{self.bands} bands need {self.bands} level names, got {len(self.level_names)}"
            )
        return self

    @property
    def component_max(self) -> int:
        return 2 * self.part_max

    @property
    def n_scores(self) -> int:
        """Number of score classes ``0..component_max``."""

        return self.component_max + 1

    @property
    def bands(self) -> int:
        return len(self.cut_scores) + 1

    def band_starts(self) -> NDArray[np.int64]:
        return np.asarray((0, *self.cut_scores), dtype=np.int64)

    def band_sizes(self) -> NDArray[np.int64]:
        edges = np.asarray((0, *self.cut_scores, self.n_scores), dtype=np.int64)
        return np.diff(edges)

    def to_record(self) -> str:
        """Render as ``part_max=20 cuts=16,28 levels=L1,L2,L3``."""

        cuts = ",".join(str(cut) for cut in self.cut_scores)
        levels = ",".join(self.level_names)
        return f"part_max={self.part_max} cuts={cuts} levels={levels}"

    @classmethod
    def from_record(cls, record: str) -> "ScoreScheme":
        fields: dict[str, str] = {}
        for token in record.split():
            key, sep, value = token.partition("=")
            if not sep or key not in _RECORD_KEYS:
                raise ValueError(
                    f"Invalid score scheme token '{token}'. Expected keys: {list(_RECORD_KEYS)}"
                )
            fields[key] = value

        payload: dict[str, Any] = {}
        if "part_max" in fields:
            payload["part_max"] = int(fields["part_max"])
        if "cuts" in fields:
            payload["cut_scores"] = tuple(int(cut) for cut in fields["cuts"].split(","))
        if "levels" in fields:
            payload["level_names"] = tuple(fields["levels"].split(","))
        return cls(**payload)


def _check_scores(scores: NDArray[np.int64], scheme: ScoreScheme) -> None:
    if np.any(scores < 0) or np.any(scores > scheme.component_max):
        raise ValueError(f"component scores must lie in [0, {scheme.component_max}]")


def band_of(score: ArrayLike, scheme: ScoreScheme):
    """CEFR band index of a component score (or array of scores)."""

    scores = np.asarray(score)
    if not np.issubdtype(scores.dtype, np.integer):
        if np.any(scores != np.floor(scores)):
            raise ValueError("component scores must be integers")
        scores = scores.astype(np.int64)
    _check_scores(scores, scheme)
    levels = np.searchsorted(np.asarray(scheme.cut_scores), scores, side="right")
    if levels.ndim == 0:
        return int(levels)
    return levels.astype(np.int64)


def bin_probabilities(p: ArrayLike, scheme: ScoreScheme) -> NDArray[np.float64]:
    """Sum score-class probabilities within each band (last axis)."""

    probs = np.asarray(p, dtype=np.float64)
    if probs.shape[-1] != scheme.n_scores:
        raise ValueError(
            f"expected {scheme.n_scores} score-class probabilities, got {probs.shape[-1]}"
        )
    return np.add.reduceat(probs, scheme.band_starts(), axis=-1)


__all__ = [
    "ScoreScheme",
    "DEFAULT_CUT_SCORES",
    "DEFAULT_LEVEL_NAMES",
    "band_of",
    "bin_probabilities",
]
