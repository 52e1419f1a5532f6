"""Mini-batch gradient descent for the confidence classifier, and inference helpers."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.app.cefr import ConfidenceRecord, ScoreScheme, batch_confidence
from src.app.data import Sample
from src.app.losses import batch_gradient_logits, batch_loss, softmax

from .config import ModelConfig
from .network import ModelParams, backward, forward, forward_with_cache, init_params

logger = logging.getLogger(__name__)


class TrainingDivergedError(RuntimeError):
    """Training produced non-finite logits or loss."""

    def __init__(self, epoch: int, batch: int | None, detail: str) -> None:
        where = f"epoch {epoch}" if batch is None else f"epoch {epoch}, batch {batch}"
        super().__init__(f"training diverged at {where}: {detail}")
        self.epoch = epoch
        self.batch = batch


@dataclass(slots=True)
class TrainingResult:
    """Final parameters and the mean training loss after every epoch."""

    params: ModelParams
    curve: list[float] = field(default_factory=list)


def training_labels(architecture: str, samples: Sequence[Sample]) -> NDArray[np.int64]:
    """Class targets: AM-band correctness, FA level, or FA score."""

    if architecture == "binary":
        values = [int(sample.correct) for sample in samples]
    elif architecture == "cefr":
        values = [sample.fa_level for sample in samples]
    elif architecture == "score":
        values = [sample.fa_score for sample in samples]
    else:
        raise ValueError(f"Unknown architecture '{architecture}'.")
    return np.asarray(values, dtype=np.int64)


def feature_matrix(samples: Sequence[Sample]) -> NDArray[np.float64]:
    return np.asarray([sample.features for sample in samples], dtype=np.float64)


def _epoch_loss(cfg: ModelConfig, params: ModelParams, features, labels, epoch: int) -> float:
    logits, _ = forward_with_cache(params, features)
    if not np.all(np.isfinite(logits)):
        raise TrainingDivergedError(epoch, None, "non-finite logits on the training set")
    probs = softmax(logits)
    reduced = batch_loss(labels, probs, cfg.loss, cfg.epsilon).reduced
    if not np.isfinite(reduced):
        raise TrainingDivergedError(epoch, None, f"mean loss is {reduced}")
    return reduced


def train(cfg: ModelConfig, features: ArrayLike, labels: ArrayLike) -> TrainingResult:
    """Train from :func:`init_params` with seeded per-epoch shuffling.

    The run is a pure function of ``(cfg, features, labels)``. With
    ``cfg.epochs == 0`` the initial parameters come back with an empty curve.
    """

    x = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64)
    if x.ndim != 2 or x.shape[0] == 0:
        raise ValueError("training requires a non-empty 2-D feature matrix")
    if x.shape[1] != cfg.input_dim:
        raise ValueError(f"expected {cfg.input_dim} features, got {x.shape[1]}")
    if y.shape != (x.shape[0],):
        raise ValueError("labels must be a 1-D array aligned with features")
    if np.any(y < 0) or np.any(y >= cfg.n_classes):
        raise ValueError(f"labels must lie in [0, {cfg.n_classes})")

    params = init_params(cfg)
    shuffle_rng = np.random.default_rng([cfg.seed, 1])
    curve: list[float] = []
    n = x.shape[0]

    for epoch in range(cfg.epochs):
        order = shuffle_rng.permutation(n)
        for batch_index, start in enumerate(range(0, n, cfg.batch_size)):
            rows = order[start:start + cfg.batch_size]
            logits, cache = forward_with_cache(params, x[rows])
            if not np.all(np.isfinite(logits)):
                logger.error("non-finite logits at epoch %d batch %d", epoch, batch_index)
                raise TrainingDivergedError(epoch, batch_index, "non-finite logits")
            dlogits = batch_gradient_logits(y[rows], logits, cfg.loss, cfg.epsilon) / rows.shape[0]
            grads = backward(params, cache, dlogits)
            for weight, grad in zip(params.weights, grads.weights):
                weight -= cfg.learning_rate * grad
            for bias, grad in zip(params.biases, grads.biases):
                bias -= cfg.learning_rate * grad

        try:
            loss = _epoch_loss(cfg, params, x, y, epoch)
        except TrainingDivergedError:
            logger.error("training diverged after epoch %d", epoch)
            raise
        curve.append(loss)
        logger.debug("epoch %d/%d mean loss %.6f", epoch + 1, cfg.epochs, loss)

    if curve:
        logger.info("trained %s for %d epochs, final loss %.6f", cfg.loss.name, cfg.epochs, curve[-1])
    return TrainingResult(params=params, curve=curve)


def train_on_samples(cfg: ModelConfig, samples: Sequence[Sample]) -> TrainingResult:
    """Train on generated samples using the architecture's class targets."""

    if not samples:
        raise ValueError("training requires at least one sample")
    return train(cfg, feature_matrix(samples), training_labels(cfg.architecture, samples))


def predict_confidence(
    params: ModelParams,
    cfg: ModelConfig,
    sample_features: ArrayLike,
    am_score: int,
    scheme: ScoreScheme,
    sample_id: str = "",
) -> ConfidenceRecord:
    """Forward one sample and read off confidence in its automarker score."""

    cfg.check_scheme(scheme)
    _, probs = forward(params, np.asarray(sample_features, dtype=np.float64))
    if probs.shape[0] != cfg.n_classes:
        raise ValueError(f"model outputs {probs.shape[0]} classes, config says {cfg.n_classes}")
    confidence = batch_confidence(cfg.architecture, probs[None, :], [am_score], scheme)[0]
    return ConfidenceRecord.for_score(sample_id, am_score, confidence, scheme)


def predict_records(
    params: ModelParams,
    cfg: ModelConfig,
    samples: Sequence[Sample],
    scheme: ScoreScheme,
) -> list[ConfidenceRecord]:
    """Batched :func:`predict_confidence` over samples, in input order."""

    cfg.check_scheme(scheme)
    if not samples:
        return []
    _, probs = forward(params, feature_matrix(samples))
    am_scores = np.asarray([sample.am_score for sample in samples], dtype=np.int64)
    confidence = batch_confidence(cfg.architecture, probs, am_scores, scheme)
    return [
        ConfidenceRecord.for_score(sample.sample_id, sample.am_score, value, scheme)
        for sample, value in zip(samples, confidence)
    ]


__all__ = [
    "TrainingDivergedError",
    "TrainingResult",
    "train",
    "train_on_samples",
    "training_labels",
    "feature_matrix",
    "predict_confidence",
    "predict_records",
]
