"""Finite-difference verification of the analytic loss and network gradients."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.typing import NDArray

from src.app.losses import (
    LOSS_NAMES,
    LossSpec,
    batch_gradient_logits,
    batch_loss,
    evaluate_loss,
    loss_gradient_logits,
    parse_loss,
    softmax,
)

from .config import ModelConfig
from .network import ModelParams, backward, forward_with_cache, init_params

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-4
DEFAULT_STEP = 1e-6
DEFAULT_CLASS_COUNTS: tuple[int, ...] = (2, 3, 41)
NETWORK_SHAPE = {"input_dim": 4, "hidden_layers": (6, 5), "n_classes": 5}

# Instances closer than these to a non-differentiable point are redrawn.
_MIN_LOGIT_GAP = 1e-3
_MIN_PRE_ACTIVATION = 1e-4


@dataclass(slots=True, frozen=True)
class GradCheckResult:
    """Worst relative error for one loss on one kind of instance."""

    check: str
    loss: str
    n_classes: int
    max_rel_error: float
    worst_coordinate: str
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_rel_error <= self.tolerance


@dataclass(slots=True)
class GradCheckReport:
    results: list[GradCheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> list[GradCheckResult]:
        return [result for result in self.results if not result.passed]


def relative_error(analytic: NDArray[np.float64], numeric: NDArray[np.float64]) -> float:
    scale = max(float(np.linalg.norm(analytic) + np.linalg.norm(numeric)), 1e-12)
    return float(np.linalg.norm(analytic - numeric)) / scale


def _top_gap(logits: NDArray[np.float64]) -> float:
    ordered = np.sort(logits, axis=-1)
    return float(np.min(ordered[..., -1] - ordered[..., -2]))


def _central_difference(
    objective: Callable[[], float], target: NDArray[np.float64], step: float
) -> NDArray[np.float64]:
    """Perturb ``target`` in place one coordinate at a time."""

    grad = np.zeros_like(target)
    for index in np.ndindex(target.shape):
        original = target[index]
        target[index] = original + step
        upper = objective()
        target[index] = original - step
        lower = objective()
        target[index] = original
        grad[index] = (upper - lower) / (2.0 * step)
    return grad


def check_logit_gradient(
    loss: LossSpec,
    logits: NDArray[np.float64],
    label: int,
    *,
    epsilon: float = 1e-7,
    step: float = DEFAULT_STEP,
) -> tuple[float, int]:
    """Relative error of :func:`loss_gradient_logits` and the worst logit index."""

    z = np.array(logits, dtype=np.float64)
    analytic = loss_gradient_logits(label, z, loss, epsilon)
    numeric = _central_difference(lambda: evaluate_loss(label, softmax(z), loss, epsilon), z, step)
    worst = int(np.argmax(np.abs(analytic - numeric)))
    return relative_error(analytic, numeric), worst


def check_network_gradient(
    params: ModelParams,
    loss: LossSpec,
    features: NDArray[np.float64],
    labels: NDArray[np.int64],
    *,
    epsilon: float = 1e-7,
    step: float = DEFAULT_STEP,
) -> tuple[float, str]:
    """Relative error of back-propagated gradients of the batch-mean loss."""

    logits, cache = forward_with_cache(params, features)
    dlogits = batch_gradient_logits(labels, logits, loss, epsilon) / features.shape[0]
    grads = backward(params, cache, dlogits)

    def objective() -> float:
        current, _ = forward_with_cache(params, features)
        return batch_loss(labels, softmax(current), loss, epsilon).reduced

    analytic_parts: list[NDArray[np.float64]] = []
    numeric_parts: list[NDArray[np.float64]] = []
    names: list[str] = []
    for position, (array, grad) in enumerate(zip(params.arrays(), grads.arrays())):
        layer, kind = divmod(position, 2)
        label = "weight" if kind == 0 else "bias"
        analytic_parts.append(grad.ravel())
        numeric_parts.append(_central_difference(objective, array, step).ravel())
        names.extend(f"layer {layer} {label}{list(index)}" for index in np.ndindex(array.shape))

    analytic = np.concatenate(analytic_parts)
    numeric = np.concatenate(numeric_parts)
    worst = int(np.argmax(np.abs(analytic - numeric)))
    return relative_error(analytic, numeric), names[worst]


def _draw_logits(rng: np.random.Generator, n_classes: int) -> tuple[NDArray[np.float64], int]:
    while True:
        logits = rng.normal(0.0, 1.5, size=n_classes)
        if _top_gap(logits) >= _MIN_LOGIT_GAP:
            return logits, int(rng.integers(n_classes))


def _draw_network(
    rng: np.random.Generator, seed: int
) -> tuple[ModelParams, NDArray[np.float64], NDArray[np.int64]]:
    cfg = ModelConfig(seed=seed, **NETWORK_SHAPE)
    params = init_params(cfg)
    while True:
        for array in params.biases:
            array[:] = rng.normal(0.0, 0.1, size=array.shape)
        features = rng.normal(0.0, 1.0, size=(3, cfg.input_dim))
        labels = rng.integers(cfg.n_classes, size=3)
        logits, cache = forward_with_cache(params, features)
        near_kink = any(np.any(np.abs(z) < _MIN_PRE_ACTIVATION) for z in cache.pre_activations)
        if not near_kink and _top_gap(logits) >= _MIN_LOGIT_GAP:
            return params, features, labels


def run_suite(
    seed: int = 0,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
    instances: int = 100,
    class_counts: Sequence[int] = DEFAULT_CLASS_COUNTS,
    losses: Sequence[str] = LOSS_NAMES,
    network: bool = True,
) -> GradCheckReport:
    """Check every loss on random logits for each class count, then through the network.

    Each (loss, instance kind) pair draws from its own seeded generator, so a
    row's result does not depend on which other rows were requested.
    """

    if instances < 1:
        raise ValueError(f"instances must be >= 1, got {instances}")
    report = GradCheckReport()
    for loss_index, name in enumerate(losses):
        loss = parse_loss(name)
        for n_classes in class_counts:
            rng = np.random.default_rng([seed, loss_index, n_classes])
            worst_error, worst_where = 0.0, "-"
            for _ in range(instances):
                logits, label = _draw_logits(rng, n_classes)
                error, coordinate = check_logit_gradient(loss, logits, label)
                if error >= worst_error:
                    worst_error, worst_where = error, f"logit[{coordinate}]"
            report.results.append(
                GradCheckResult("logits", loss.name, n_classes, worst_error, worst_where, tolerance)
            )

        if network:
            rng = np.random.default_rng([seed, loss_index, 0])
            worst_error, worst_where = 0.0, "-"
            for instance in range(instances):
                params, features, labels = _draw_network(rng, seed + instance)
                error, coordinate = check_network_gradient(params, loss, features, labels)
                if error >= worst_error:
                    worst_error, worst_where = error, coordinate
            report.results.append(
                GradCheckResult(
                    "network", loss.name, NETWORK_SHAPE["n_classes"], worst_error, worst_where, tolerance
                )
            )

    for failure in report.failures:
        logger.warning(
            "gradient check failed for %s (%s, K=%d): rel error %.3e at %s",
            failure.loss,
            failure.check,
            failure.n_classes,
            failure.max_rel_error,
            failure.worst_coordinate,
        )
    return report


__all__ = [
    "GradCheckResult",
    "GradCheckReport",
    "DEFAULT_TOLERANCE",
    "DEFAULT_CLASS_COUNTS",
    "relative_error",
    "check_logit_gradient",
    "check_network_gradient",
    "run_suite",
]
