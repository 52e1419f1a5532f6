"""Closed-form ordinal distance kernels.

Each kernel maps a signed class distance ``x = predicted - true`` to a
penalty-shaping value. All functions accept scalars or integer arrays and
return a ``float`` for scalar input, an ``ndarray`` otherwise.
"""

from __future__ import annotations

from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import expit

from .specs import KernelSpec

KernelValue = Union[float, NDArray[np.float64]]


def _abs_distance(x: ArrayLike) -> NDArray[np.float64]:
    return np.abs(np.asarray(x, dtype=np.float64))


def _finish(values: NDArray[np.float64], like: ArrayLike) -> KernelValue:
    if np.ndim(like) == 0:
        return float(values)
    return values


def _check_n_classes(n_classes: int, *, minimum: int) -> None:
    if int(n_classes) != n_classes or n_classes < minimum:
        raise ValueError(f"n_classes must be an integer >= {minimum}, got {n_classes}")


def kernel_linear(x: ArrayLike, n_classes: int) -> KernelValue:
    """``max(0, 1 - |x| / N)``."""

    _check_n_classes(n_classes, minimum=1)
    values = np.maximum(0.0, 1.0 - _abs_distance(x) / float(n_classes))
    return _finish(values, x)


def kernel_log(x: ArrayLike, n_classes: int, alpha: float) -> KernelValue:
    """``max(0, 1 - alpha * log(1 + |x|) / log(N))``."""

    _check_n_classes(n_classes, minimum=2)
    values = np.maximum(
        0.0, 1.0 - alpha * np.log1p(_abs_distance(x)) / np.log(float(n_classes))
    )
    return _finish(values, x)


def kernel_exp(x: ArrayLike, alpha: float, beta: float) -> KernelValue:
    """``max(0, alpha * (1 - 1 / (1 + exp(beta - |x|))))``.

    ``1 - 1/(1 + e^z)`` is the logistic of ``z``; :func:`scipy.special.expit`
    evaluates it without overflow for any ``beta - |x|``.
    """

    values = np.maximum(0.0, alpha * expit(beta - _abs_distance(x)))
    return _finish(values, x)


def kernel_gaussian(x: ArrayLike, alpha: float) -> KernelValue:
    """``exp(-(x / alpha)^2)``."""

    scaled = _abs_distance(x) / alpha
    return _finish(np.exp(-(scaled * scaled)), x)


def occ_distance_weight(y_true_index: ArrayLike, y_pred_index: ArrayLike, n_classes: int) -> KernelValue:
    """Normalized argmax distance ``|y_true - y_pred| / (K - 1)``."""

    _check_n_classes(n_classes, minimum=2)
    true_idx = np.asarray(y_true_index)
    pred_idx = np.asarray(y_pred_index)
    for name, idx in (("y_true_index", true_idx), ("y_pred_index", pred_idx)):
        if np.any(idx < 0) or np.any(idx > n_classes - 1):
            raise ValueError(f"{name} must lie in [0, {n_classes - 1}]")
    values = np.abs(true_idx - pred_idx).astype(np.float64) / float(n_classes - 1)
    if values.ndim == 0:
        return float(values)
    return values


def kernel_eval(spec: KernelSpec, x: ArrayLike, n_classes: int) -> KernelValue:
    """Evaluate the kernel described by ``spec`` at class distance ``x``.

    ``|x|`` must not exceed ``n_classes - 1``.
    """

    _check_n_classes(n_classes, minimum=1)
    distance = _abs_distance(x)
    if np.any(distance > n_classes - 1):
        raise ValueError(f"class distance exceeds n_classes - 1 = {n_classes - 1}")

    if spec.kind == "linear":
        return kernel_linear(x, n_classes)
    if spec.kind == "log":
        return kernel_log(x, n_classes, spec.alpha)
    if spec.kind == "exp":
        return kernel_exp(x, spec.alpha, spec.beta)
    if spec.kind == "gaussian":
        return kernel_gaussian(x, spec.alpha)
    if spec.kind == "constant-one":
        return _finish(np.ones_like(distance), x)
    raise ValueError(f"Unsupported kernel kind '{spec.kind}'.")


__all__ = [
    "kernel_linear",
    "kernel_log",
    "kernel_exp",
    "kernel_gaussian",
    "occ_distance_weight",
    "kernel_eval",
]
