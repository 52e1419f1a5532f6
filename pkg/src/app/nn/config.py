"""Confidence-model configuration."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.app.cefr import Architecture, ScoreScheme, n_classes_for
from src.app.losses import DEFAULT_EPSILON, LossSpec

# Synthetic-scale defaults; nothing here is tuned against real exam data.
DEFAULT_HIDDEN_LAYERS: tuple[int, ...] = (32,)
DEFAULT_LEARNING_RATE = 0.05
DEFAULT_EPOCHS = 20
DEFAULT_BATCH_SIZE = 64


class ModelConfig(BaseModel):
    """Shape, loss and optimizer settings of one softmax confidence classifier."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    architecture: Architecture = "score"
    input_dim: int = Field(ge=1)
    hidden_layers: tuple[int, ...] = DEFAULT_HIDDEN_LAYERS
    n_classes: int = Field(ge=2)
    seed: int = Field(default=0, ge=0)
    learning_rate: float = Field(default=DEFAULT_LEARNING_RATE, gt=0.0)
    epochs: int = Field(default=DEFAULT_EPOCHS, ge=0)
    batch_size: int = Field(default=DEFAULT_BATCH_SIZE, ge=1)
    loss: LossSpec = LossSpec(kind="cce")
    epsilon: float = Field(default=DEFAULT_EPSILON, gt=0.0, le=1e-3)

    @field_validator("hidden_layers")
    @classmethod
    def _positive_widths(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if any(width < 1 for width in value):
            raise ValueError(f"hidden layer widths must be positive, got {list(value)}")
        return value

    @property
    def layer_dims(self) -> tuple[int, ...]:
        return (self.input_dim, *self.hidden_layers, self.n_classes)

    @classmethod
    def for_scheme(
        cls,
        architecture: str,
        scheme: ScoreScheme,
        *,
        input_dim: int,
        **overrides: Any,
    ) -> "ModelConfig":
        """Config whose head width matches ``architecture`` under ``scheme``."""

        return cls(
            architecture=architecture,
            input_dim=input_dim,
            n_classes=n_classes_for(architecture, scheme),
            **overrides,
        )

    def check_scheme(self, scheme: ScoreScheme) -> None:
        """Raise if the head width does not fit the architecture under ``scheme``."""

        expected = n_classes_for(self.architecture, scheme)
        if self.n_classes != expected:
            raise ValueError(
                f"{self.architecture} architecture needs {expected} classes under "
                f"'{scheme.to_record()}', model has {self.n_classes}"
            )


__all__ = [
    "ModelConfig",
    "DEFAULT_HIDDEN_LAYERS",
    "DEFAULT_LEARNING_RATE",
    "DEFAULT_EPOCHS",
    "DEFAULT_BATCH_SIZE",
]
