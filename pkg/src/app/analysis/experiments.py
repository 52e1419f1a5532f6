"""Loss and architecture comparison grids."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Iterable, Sequence

import numpy as np

from src.app.cefr import ARCHITECTURES, ScoreScheme, predicted_levels
from src.app.data import Sample
from src.app.losses import LOSS_NAMES, parse_loss
from src.app.nn import (
    ModelConfig,
    ModelParams,
    feature_matrix,
    forward,
    predict_records,
    train_on_samples,
)

from .metrics import ClassificationScores, cefr_level_report
from .release import DEFAULT_TARGETS, DecisionSummary, ReleaseReport, decision_summary, release_report
from .sweep import DEFAULT_STEPS, SweepRow, sweep

logger = logging.getLogger(__name__)

GRIDS: tuple[str, ...] = ("losses", "architectures")


@dataclass(frozen=True, slots=True)
class ExperimentJob:
    label: str
    config: ModelConfig


@dataclass(slots=True)
class ModelEvaluation:
    """Everything the comparison tables need from one trained model."""

    label: str
    config: ModelConfig
    curve: list[float]
    rows: list[SweepRow]
    release: ReleaseReport
    decision: DecisionSummary
    levels: dict[str, ClassificationScores] | None = field(default=None)


def build_grid(
    grid: str,
    scheme: ScoreScheme,
    *,
    input_dim: int,
    weight_scheme: str | None = None,
    **overrides: Any,
) -> list[ExperimentJob]:
    """Jobs in table order.

    ``losses`` trains every named loss on the score-binned head with each
    kernel's default shape; ``architectures`` trains the binary, CEFR and
    score-binned heads under CCE. ``overrides`` are shared
    :class:`ModelConfig` fields (seed, epochs, learning rate, ...).
    """

    if grid == "losses":
        return [
            ExperimentJob(
                label=name,
                config=ModelConfig.for_scheme(
                    "score",
                    scheme,
                    input_dim=input_dim,
                    loss=parse_loss(name, weight_scheme=weight_scheme if name.startswith("kwocce-") else None),
                    **overrides,
                ),
            )
            for name in LOSS_NAMES
        ]
    if grid == "architectures":
        return [
            ExperimentJob(
                label=architecture,
                config=ModelConfig.for_scheme(
                    architecture, scheme, input_dim=input_dim, loss=parse_loss("cce"), **overrides
                ),
            )
            for architecture in ARCHITECTURES
        ]
    raise ValueError(f"Unknown grid '{grid}'. Expected one of {list(GRIDS)}")


def evaluate_model(
    label: str,
    params: ModelParams,
    cfg: ModelConfig,
    eval_samples: Sequence[Sample],
    scheme: ScoreScheme,
    *,
    curve: Sequence[float] = (),
    n_steps: int = DEFAULT_STEPS,
    targets: Iterable[float] = DEFAULT_TARGETS,
) -> ModelEvaluation:
    records = predict_records(params, cfg, eval_samples, scheme)
    fa_scores = np.asarray([sample.fa_score for sample in eval_samples], dtype=np.int64)
    rows = sweep(records, fa_scores, scheme, n_steps)

    levels = None
    if cfg.architecture != "binary":
        _, probs = forward(params, feature_matrix(eval_samples))
        true_levels = [sample.fa_level for sample in eval_samples]
        levels = cefr_level_report(true_levels, predicted_levels(cfg.architecture, probs, scheme), scheme.bands)

    return ModelEvaluation(
        label=label,
        config=cfg,
        curve=list(curve),
        rows=rows,
        release=release_report(rows, targets),
        decision=decision_summary(rows, records, fa_scores, scheme),
        levels=levels,
    )


def run_job(
    job: ExperimentJob,
    train_samples: Sequence[Sample],
    eval_samples: Sequence[Sample],
    scheme: ScoreScheme,
    n_steps: int = DEFAULT_STEPS,
    targets: tuple[float, ...] = DEFAULT_TARGETS,
) -> ModelEvaluation:
    logger.info("training %s", job.label)
    result = train_on_samples(job.config, train_samples)
    return evaluate_model(
        job.label,
        result.params,
        job.config,
        eval_samples,
        scheme,
        curve=result.curve,
        n_steps=n_steps,
        targets=targets,
    )


def run_grid(
    jobs: Sequence[ExperimentJob],
    train_samples: Sequence[Sample],
    eval_samples: Sequence[Sample],
    scheme: ScoreScheme,
    *,
    n_steps: int = DEFAULT_STEPS,
    targets: Iterable[float] = DEFAULT_TARGETS,
    workers: int = 1,
) -> list[ModelEvaluation]:
    """Train and evaluate every job; results follow ``jobs`` order for any ``workers``."""

    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    task = partial(
        run_job,
        train_samples=train_samples,
        eval_samples=eval_samples,
        scheme=scheme,
        n_steps=n_steps,
        targets=tuple(targets),
    )
    if workers == 1 or len(jobs) <= 1:
        return [task(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(task, jobs))


__all__ = [
    "GRIDS",
    "ExperimentJob",
    "ModelEvaluation",
    "build_grid",
    "evaluate_model",
    "run_job",
    "run_grid",
]
