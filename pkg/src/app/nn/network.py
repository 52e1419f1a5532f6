"""Feed-forward softmax classifier: parameters, forward pass and back-propagation.

Layers are affine maps ``h @ W + b`` with ``W`` shaped ``(fan_in, fan_out)``;
hidden layers use a rectifier, the output layer is followed by softmax.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from src.app.losses import softmax

from .config import ModelConfig


@dataclass(slots=True)
class ModelParams:
    """Per-layer weight matrices and bias vectors (float64)."""

    weights: list[NDArray[np.float64]]
    biases: list[NDArray[np.float64]]

    def copy(self) -> "ModelParams":
        return ModelParams(
            weights=[weight.copy() for weight in self.weights],
            biases=[bias.copy() for bias in self.biases],
        )

    def arrays(self) -> list[NDArray[np.float64]]:
        """Parameters in layer order, weight before bias."""

        out: list[NDArray[np.float64]] = []
        for weight, bias in zip(self.weights, self.biases):
            out.extend((weight, bias))
        return out

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(array)) for array in self.arrays())


@dataclass(slots=True)
class ForwardCache:
    """Layer inputs and hidden pre-activations kept for back-propagation."""

    inputs: list[NDArray[np.float64]]
    pre_activations: list[NDArray[np.float64]]


def init_params(cfg: ModelConfig) -> ModelParams:
    """Scaled-uniform weights, bound ``sqrt(6 / (fan_in + fan_out))``; zero biases."""

    rng = np.random.default_rng(cfg.seed)
    dims = cfg.layer_dims
    weights: list[NDArray[np.float64]] = []
    biases: list[NDArray[np.float64]] = []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        bound = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return ModelParams(weights=weights, biases=biases)


def relu(values: NDArray[np.float64]) -> NDArray[np.float64]:
    return np.maximum(values, 0.0)


def _as_batch(params: ModelParams, features: ArrayLike) -> NDArray[np.float64]:
    batch = np.atleast_2d(np.asarray(features, dtype=np.float64))
    expected = params.weights[0].shape[0]
    if batch.ndim != 2 or batch.shape[1] != expected:
        raise ValueError(f"expected {expected} features per sample, got shape {batch.shape}")
    if not np.all(np.isfinite(batch)):
        raise ValueError("features must be finite")
    return batch


def forward_with_cache(
    params: ModelParams, features: ArrayLike
) -> tuple[NDArray[np.float64], ForwardCache]:
    """Logits for a batch plus the cache :func:`backward` needs."""

    hidden = _as_batch(params, features)
    cache = ForwardCache(inputs=[], pre_activations=[])
    last = len(params.weights) - 1
    for index, (weight, bias) in enumerate(zip(params.weights, params.biases)):
        cache.inputs.append(hidden)
        z = hidden @ weight + bias
        if index == last:
            return z, cache
        cache.pre_activations.append(z)
        hidden = relu(z)
    raise ValueError("model has no layers")


def forward(
    params: ModelParams, features: ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Return ``(logits, probs)``; a 1-D feature vector gives 1-D outputs."""

    logits, _ = forward_with_cache(params, features)
    probs = softmax(logits)
    if np.ndim(features) == 1:
        return logits[0], probs[0]
    return logits, probs


def backward(
    params: ModelParams, cache: ForwardCache, dlogits: NDArray[np.float64]
) -> ModelParams:
    """Back-propagate ``d loss / d logits`` to parameter gradients."""

    grad_w: list[NDArray[np.float64]] = [np.empty(0)] * len(params.weights)
    grad_b: list[NDArray[np.float64]] = [np.empty(0)] * len(params.biases)
    delta = dlogits
    for index in range(len(params.weights) - 1, -1, -1):
        grad_w[index] = cache.inputs[index].T @ delta
        grad_b[index] = delta.sum(axis=0)
        if index > 0:
            delta = (delta @ params.weights[index].T) * (cache.pre_activations[index - 1] > 0.0)
    return ModelParams(weights=grad_w, biases=grad_b)


__all__ = [
    "ModelParams",
    "ForwardCache",
    "init_params",
    "relu",
    "forward",
    "forward_with_cache",
    "backward",
]
