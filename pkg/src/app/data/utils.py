"""Utility helpers for inspecting generated datasets."""

from __future__ import annotations

from collections import Counter
from typing import Sequence

import numpy as np

from src.app.cefr import ScoreScheme

from .schemas import Sample


def summarize_dataset(samples: Sequence[Sample], scheme: ScoreScheme | None = None) -> str:
    """Return a human readable summary of a dataset.

    Lists the number of candidates per fair-average level, the automarker's
    CEFR agreement rate, and mean/sd of the FA and AM scores. Intended for
    debug logs and CLI output.
    """

    if not samples:
        return "No samples."

    names = scheme.level_names if scheme is not None else None
    counts = Counter(sample.fa_level for sample in samples)
    fa = np.asarray([sample.fa_score for sample in samples], dtype=np.float64)
    am = np.asarray([sample.am_score for sample in samples], dtype=np.float64)
    agreement = 100.0 * sum(sample.correct for sample in samples) / len(samples)

    lines = [f"Samples: {len(samples)}"]
    for level in sorted(counts):
        label = names[level] if names is not None and level < len(names) else f"level {level}"
        lines.append(f"  - {label}: {counts[level]}")
    lines.append(f"FA score: mean {fa.mean():.2f}, sd {fa.std():.2f}")
    lines.append(f"AM score: mean {am.mean():.2f}, sd {am.std():.2f}")
    lines.append(f"AM CEFR agreement: {agreement:.2f}%")
    return "\n".join(lines)


__all__ = ["summarize_dataset"]
