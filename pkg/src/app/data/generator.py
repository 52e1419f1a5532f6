"""Seeded synthetic exam-data generator.

Fair-average component scores are drawn from a clamped normal. Each candidate
is "hard" with probability ``hard_fraction``; hard candidates get a noisier
automarker score. The embedding is a fixed random projection of
(hardness, standardized FA score) plus isotropic noise, so hardness can be
recovered from the features.
"""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.app.cefr import ScoreScheme, band_of

from .schemas import GeneratorConfig, Sample

logger = logging.getLogger(__name__)

EMBEDDING_NOISE_SD = 0.5


def score_features(am_scores: ArrayLike, scheme: ScoreScheme) -> NDArray[np.float64]:
    """Normalized AM score followed by its signed normalized distance to each cut."""

    scores = np.asarray(am_scores, dtype=np.float64).reshape(-1, 1)
    scale = float(scheme.component_max)
    cuts = np.asarray(scheme.cut_scores, dtype=np.float64)[None, :]
    return np.hstack([scores / scale, (scores - cuts) / scale])


def feature_dim(cfg: GeneratorConfig, scheme: ScoreScheme) -> int:
    return cfg.embedding_dim + 1 + len(scheme.cut_scores)


def generate(cfg: GeneratorConfig, scheme: ScoreScheme) -> list[Sample]:
    """Generate ``cfg.n_candidates`` samples; a pure function of ``(cfg, scheme)``.

    Scores are rounded half-to-even after clamping to ``[0, component_max]``.
    """

    rng = np.random.default_rng(cfg.seed)
    n = cfg.n_candidates
    top = float(scheme.component_max)

    fa = np.rint(np.clip(rng.normal(cfg.score_mean, cfg.score_sd, size=n), 0.0, top))
    hard = rng.random(n) < cfg.hard_fraction
    noise_sd = np.where(hard, cfg.am_noise_sd_hard, cfg.am_noise_sd_easy)
    am = np.rint(np.clip(fa + rng.standard_normal(n) * noise_sd, 0.0, top))

    projection = rng.standard_normal((2, cfg.embedding_dim))
    latent = np.column_stack([np.where(hard, 1.0, -1.0), (fa - cfg.score_mean) / cfg.score_sd])
    embedding = latent @ projection + rng.normal(0.0, EMBEDDING_NOISE_SD, size=(n, cfg.embedding_dim))

    fa_scores = fa.astype(np.int64)
    am_scores = am.astype(np.int64)
    fa_levels = np.asarray(band_of(fa_scores, scheme)).reshape(-1)
    am_levels = np.asarray(band_of(am_scores, scheme)).reshape(-1)
    features = np.hstack([embedding, score_features(am_scores, scheme)])

    samples = [
        Sample(
            sample_id=f"c{index:07d}",
            features=tuple(float(value) for value in features[index]),
            fa_score=int(fa_scores[index]),
            am_score=int(am_scores[index]),
            fa_level=int(fa_levels[index]),
            am_level=int(am_levels[index]),
        )
        for index in range(n)
    ]
    logger.info(
        "generated %d samples (seed=%d, %d hard)", n, cfg.seed, int(hard.sum())
    )
    return samples


__all__ = ["generate", "score_features", "feature_dim", "EMBEDDING_NOISE_SD"]
