"""Ordinal cross-entropy losses and their logit gradients."""

from .functions import (
    LossBatch,
    OneHotLabel,
    batch_gradient_logits,
    batch_loss,
    cce_loss,
    evaluate_loss,
    kwocce_loss,
    kwocce_weight,
    loss_gradient_logits,
    occ_reference_loss,
    per_sample_losses,
    sample_weights,
    softmax,
)
from .specs import DEFAULT_EPSILON, LOSS_NAMES, LossSpec, parse_loss

__all__ = [
    "LossSpec",
    "LOSS_NAMES",
    "DEFAULT_EPSILON",
    "parse_loss",
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
