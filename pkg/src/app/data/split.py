"""Stratified train/validation/evaluation splitting."""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Sequence

import numpy as np

from .schemas import Sample


class SplitError(ValueError):
    """A stratum has too few samples to populate every requested split."""


def _allocate(count: int, fractions: Sequence[float]) -> list[int]:
    """Largest-remainder apportionment of ``count`` items; ties go to the earlier split."""

    quotas = [count * fraction for fraction in fractions]
    sizes = [math.floor(quota) for quota in quotas]
    leftover = count - sum(sizes)
    order = sorted(range(len(fractions)), key=lambda i: (-(quotas[i] - sizes[i]), i))
    for index in order[:leftover]:
        sizes[index] += 1
    return sizes


def split(
    samples: Sequence[Sample],
    fractions: Sequence[float] = (0.8, 0.1, 0.1),
    seed: int = 0,
) -> tuple[list[Sample], list[Sample], list[Sample]]:
    """Split ``samples`` into train/val/eval, stratified by fair-average level.

    Input order does not matter: samples are sorted by ``sample_id`` first, then
    each level is shuffled with a generator seeded by ``seed`` and cut in the
    given proportions. Every output list is sorted by ``sample_id``.
    """

    if len(fractions) != 3:
        raise ValueError(f"expected three split fractions, got {len(fractions)}")
    if any(fraction < 0 for fraction in fractions) or not math.isclose(sum(fractions), 1.0):
        raise ValueError(f"split fractions must be non-negative and sum to 1, got {list(fractions)}")

    by_level: dict[int, list[Sample]] = defaultdict(list)
    for sample in sorted(samples, key=lambda item: item.sample_id):
        by_level[sample.fa_level].append(sample)

    rng = np.random.default_rng(seed)
    needed = sum(1 for fraction in fractions if fraction > 0)
    parts: tuple[list[Sample], list[Sample], list[Sample]] = ([], [], [])

    for level in sorted(by_level):
        members = by_level[level]
        if len(members) < needed:
            raise SplitError(
                f"level {level} has {len(members)} samples, fewer than the {needed} non-empty splits"
            )
        order = rng.permutation(len(members))
        start = 0
        for part, size in zip(parts, _allocate(len(members), fractions)):
            part.extend(members[i] for i in order[start:start + size])
            start += size

    for part in parts:
        part.sort(key=lambda item: item.sample_id)
    return parts


__all__ = ["split", "SplitError"]
