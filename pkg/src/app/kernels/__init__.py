"""Ordinal distance kernels and their configuration records."""

from .functions import (
    kernel_eval,
    kernel_exp,
    kernel_gaussian,
    kernel_linear,
    kernel_log,
    occ_distance_weight,
)
from .specs import DEFAULT_ALPHA, DEFAULT_BETA, KERNEL_KINDS, WEIGHT_SCHEMES, KernelSpec

__all__ = [
    "KernelSpec",
    "KERNEL_KINDS",
    "WEIGHT_SCHEMES",
    "DEFAULT_ALPHA",
    "DEFAULT_BETA",
    "kernel_linear",
    "kernel_log",
    "kernel_exp",
    "kernel_gaussian",
    "occ_distance_weight",
    "kernel_eval",
]
