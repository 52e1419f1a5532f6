"""Cross-entropy family losses over predicted class distributions.

Every weighted loss here has the shape ``w * CE`` where ``CE`` is the clipped
cross-entropy of the true class and ``w`` depends only on the distance between
the true class and ``argmax(p)``. The weight is piecewise constant in the
logits, so gradients treat it as a constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import softmax as _softmax

from src.app.kernels import KernelSpec, kernel_eval, occ_distance_weight

from .specs import DEFAULT_EPSILON, LossSpec

_SUM_TOLERANCE = 1e-9


@dataclass(frozen=True, slots=True)
class OneHotLabel:
    """True class of a sample as an index into ``n_classes`` ordinal classes."""

    class_index: int
    n_classes: int

    def __post_init__(self) -> None:
        if self.n_classes < 2:
            raise ValueError(f"n_classes must be >= 2, got {self.n_classes}")
        if not 0 <= self.class_index < self.n_classes:
            raise ValueError(
                f"class_index {self.class_index} outside [0, {self.n_classes - 1}]"
            )

    def to_vector(self) -> NDArray[np.float64]:
        vector = np.zeros(self.n_classes)
        vector[self.class_index] = 1.0
        return vector


LabelLike = Union[int, np.integer, OneHotLabel]


@dataclass(frozen=True, slots=True)
class LossBatch:
    """Per-sample losses and their mean."""

    per_sample_losses: NDArray[np.float64]
    reduced: float


def softmax(logits: ArrayLike) -> NDArray[np.float64]:
    """Max-subtracted softmax over the last axis."""

    return _softmax(np.asarray(logits, dtype=np.float64), axis=-1)


def _check_probs(probs: NDArray[np.float64]) -> None:
    if probs.shape[-1] < 2:
        raise ValueError("probability vectors need at least 2 classes")
    if not np.all(np.isfinite(probs)) or np.any(probs < 0.0) or np.any(probs > 1.0):
        raise ValueError("probabilities must be finite and lie in [0, 1]")
    totals = probs.sum(axis=-1)
    if np.any(np.abs(totals - 1.0) > _SUM_TOLERANCE):
        raise ValueError("probability vectors must sum to 1")


def _check_epsilon(epsilon: float) -> None:
    if not 0.0 < epsilon <= 1e-3:
        raise ValueError(f"epsilon must lie in (0, 1e-3], got {epsilon}")


def _resolve_label(y: LabelLike, n_classes: int) -> int:
    if isinstance(y, OneHotLabel):
        if y.n_classes != n_classes:
            raise ValueError(
                f"label has {y.n_classes} classes but the distribution has {n_classes}"
            )
        return y.class_index
    index = int(y)
    if not 0 <= index < n_classes:
        raise ValueError(f"class index {index} outside [0, {n_classes - 1}]")
    return index


def _resolve_labels(labels: ArrayLike, n_classes: int) -> NDArray[np.int64]:
    indices = np.asarray(labels, dtype=np.int64)
    if indices.ndim != 1:
        raise ValueError("labels must be a 1-D array of class indices")
    if np.any(indices < 0) or np.any(indices >= n_classes):
        raise ValueError(f"labels must lie in [0, {n_classes - 1}]")
    return indices


def _clipped_ce(true_probs: NDArray[np.float64], epsilon: float) -> NDArray[np.float64]:
    return -np.log(np.clip(true_probs, epsilon, 1.0))


def cce_loss(y: LabelLike, p: ArrayLike, epsilon: float = DEFAULT_EPSILON) -> float:
    """``-log(clip(p[y], epsilon, 1))``."""

    probs = np.asarray(p, dtype=np.float64)
    _check_probs(probs)
    _check_epsilon(epsilon)
    index = _resolve_label(y, probs.shape[-1])
    return float(_clipped_ce(probs[index], epsilon))


def occ_reference_loss(y: LabelLike, p: ArrayLike, epsilon: float = DEFAULT_EPSILON) -> float:
    """``(w + 1) * CE`` with ``w = |argmax(y) - argmax(p)| / (K - 1)``."""

    probs = np.asarray(p, dtype=np.float64)
    _check_probs(probs)
    n_classes = probs.shape[-1]
    index = _resolve_label(y, n_classes)
    weight = occ_distance_weight(index, int(np.argmax(probs)), n_classes)
    return (weight + 1.0) * cce_loss(index, probs, epsilon)


def kwocce_weight(spec: KernelSpec, y_index: ArrayLike, p_argmax: ArrayLike, n_classes: int):
    """Per-sample KWOCCE weight for the distance ``p_argmax - y_index``.

    ``occ_style`` gives ``1 + (1 - kernel)``, which is 1 at zero distance and
    grows as the kernel decays; ``literal`` uses the kernel value directly.
    """

    distance = np.asarray(p_argmax) - np.asarray(y_index)
    value = kernel_eval(spec, distance, n_classes)
    if spec.weight_scheme == "literal":
        return value
    return 1.0 + (1.0 - value)


def kwocce_loss(
    y: LabelLike,
    p: ArrayLike,
    spec: KernelSpec,
    epsilon: float = DEFAULT_EPSILON,
) -> float:
    """Kernel-weighted cross-entropy of a single sample."""

    probs = np.asarray(p, dtype=np.float64)
    _check_probs(probs)
    n_classes = probs.shape[-1]
    index = _resolve_label(y, n_classes)
    weight = kwocce_weight(spec, index, int(np.argmax(probs)), n_classes)
    return weight * cce_loss(index, probs, epsilon)


def sample_weights(loss: LossSpec, labels: ArrayLike, probs: ArrayLike) -> NDArray[np.float64]:
    """Detached per-sample weights ``w`` for a batch; all ones for plain CCE."""

    probs_arr = np.asarray(probs, dtype=np.float64)
    n_classes = probs_arr.shape[-1]
    indices = _resolve_labels(labels, n_classes)
    predicted = np.argmax(probs_arr, axis=-1)

    if loss.kind == "cce":
        return np.ones(indices.shape[0])
    if loss.kind == "occ":
        return 1.0 + np.asarray(occ_distance_weight(indices, predicted, n_classes), dtype=np.float64)
    weights = kwocce_weight(loss.kernel, indices, predicted, n_classes)
    return np.asarray(weights, dtype=np.float64).reshape(indices.shape)


def per_sample_losses(
    loss: LossSpec,
    labels: ArrayLike,
    probs: ArrayLike,
    epsilon: float = DEFAULT_EPSILON,
) -> NDArray[np.float64]:
    """Loss of every row of ``probs`` against the matching label."""

    probs_arr = np.asarray(probs, dtype=np.float64)
    if probs_arr.ndim != 2:
        raise ValueError("probs must be a 2-D array (samples x classes)")
    _check_probs(probs_arr)
    _check_epsilon(epsilon)
    indices = _resolve_labels(labels, probs_arr.shape[1])
    if indices.shape[0] != probs_arr.shape[0]:
        raise ValueError("labels and probs have different sample counts")

    true_probs = probs_arr[np.arange(indices.shape[0]), indices]
    return sample_weights(loss, indices, probs_arr) * _clipped_ce(true_probs, epsilon)


def batch_loss(
    labels: ArrayLike,
    probs: ArrayLike,
    loss: LossSpec,
    epsilon: float = DEFAULT_EPSILON,
) -> LossBatch:
    """Per-sample losses plus their mean.

    The mean uses :func:`math.fsum`, so the reduced value does not depend on
    how the batch was partitioned or ordered.
    """

    losses = per_sample_losses(loss, labels, probs, epsilon)
    if losses.shape[0] == 0:
        raise ValueError("batch_loss requires at least one sample")
    return LossBatch(per_sample_losses=losses, reduced=math.fsum(losses) / losses.shape[0])


def batch_gradient_logits(
    labels: ArrayLike,
    logits: ArrayLike,
    loss: LossSpec,
    epsilon: float = DEFAULT_EPSILON,
) -> NDArray[np.float64]:
    """Gradient of each sample's loss with respect to its own logits.

    Rows are ``w * (softmax(logits) - onehot(y))``; rows whose true-class
    probability is below ``epsilon`` sit on the flat part of the clip and
    get a zero gradient.
    """

    logits_arr = np.asarray(logits, dtype=np.float64)
    if logits_arr.ndim != 2:
        raise ValueError("logits must be a 2-D array (samples x classes)")
    if not np.all(np.isfinite(logits_arr)):
        raise ValueError("logits must be finite")
    _check_epsilon(epsilon)

    probs = softmax(logits_arr)
    indices = _resolve_labels(labels, probs.shape[1])
    rows = np.arange(indices.shape[0])

    weights = sample_weights(loss, indices, probs)
    grad = probs.copy()
    grad[rows, indices] -= 1.0
    grad *= weights[:, None]
    grad[probs[rows, indices] < epsilon] = 0.0
    return grad


def loss_gradient_logits(
    y: LabelLike,
    logits: ArrayLike,
    loss: LossSpec,
    epsilon: float = DEFAULT_EPSILON,
) -> NDArray[np.float64]:
    """``d loss / d logits`` for a single sample with ``p = softmax(logits)``."""

    logits_arr = np.asarray(logits, dtype=np.float64)
    if logits_arr.ndim != 1:
        raise ValueError("logits must be a 1-D vector")
    index = _resolve_label(y, logits_arr.shape[0])
    return batch_gradient_logits([index], logits_arr[None, :], loss, epsilon)[0]


def evaluate_loss(
    y: LabelLike,
    p: ArrayLike,
    loss: LossSpec,
    epsilon: float = DEFAULT_EPSILON,
) -> float:
    """Dispatch a single-sample loss by :class:`LossSpec`."""

    if loss.kind == "cce":
        return cce_loss(y, p, epsilon)
    if loss.kind == "occ":
        return occ_reference_loss(y, p, epsilon)
    return kwocce_loss(y, p, loss.kernel, epsilon)


__all__ = [
    "OneHotLabel",
    "LossBatch",
    "softmax",
    "cce_loss",
    "occ_reference_loss",
    "kwocce_weight",
    "kwocce_loss",
    "evaluate_loss",
    "sample_weights",
    "per_sample_losses",
    "batch_loss",
    "batch_gradient_logits",
    "loss_gradient_logits",
]
