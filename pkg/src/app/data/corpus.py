"""The frozen demo corpus: 50k train / 10k eval candidates under one seed."""

from __future__ import annotations

from src.app.cefr import ScoreScheme

from .generator import generate
from .schemas import GeneratorConfig, Sample
from .split import split

DEMO_CORPUS_SEED = 20240607
DEMO_N_TRAIN = 50_000
DEMO_N_EVAL = 10_000


def build_demo_corpus(
    seed: int = DEMO_CORPUS_SEED,
    scheme: ScoreScheme | None = None,
) -> tuple[ScoreScheme, list[Sample], list[Sample]]:
    """Generate the corpus and split it 5:1 into train and eval, stratified by FA level."""

    scheme = scheme or ScoreScheme()
    total = DEMO_N_TRAIN + DEMO_N_EVAL
    samples = generate(GeneratorConfig(n_candidates=total, seed=seed), scheme)
    train, _, evaluation = split(samples, (DEMO_N_TRAIN / total, 0.0, DEMO_N_EVAL / total), seed=seed)
    return scheme, train, evaluation


__all__ = ["DEMO_CORPUS_SEED", "DEMO_N_TRAIN", "DEMO_N_EVAL", "build_demo_corpus"]
