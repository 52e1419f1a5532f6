"""Schemas for synthetic exam-data generation."""

from __future__ import annotations

from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field, model_validator


class GeneratorConfig(BaseModel):
    """Parameters of the synthetic candidate population.

    Defaults are synthetic-scale values, not estimates from any real exam.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_candidates: int = Field(ge=0)
    seed: int = Field(default=0, ge=0)
    score_mean: float = Field(default=24.0, ge=0.0, le=40.0)
    score_sd: float = Field(default=6.0, gt=0.0)
    am_noise_sd_easy: float = Field(default=0.8, ge=0.0)
    am_noise_sd_hard: float = Field(default=3.0, ge=0.0)
    hard_fraction: float = Field(default=0.3, ge=0.0, le=1.0)
    embedding_dim: int = Field(default=8, ge=1)

    @model_validator(mode="after")
    def _hard_noise_dominates(self) -> "GeneratorConfig":
        if self.am_noise_sd_hard < self.am_noise_sd_easy:
            raise ValueError(
                "am_noise_sd_hard must be >= am_noise_sd_easy "
                f"({self.am_noise_sd_hard} < {self.am_noise_sd_easy})"
            )
        return self


@dataclass(frozen=True, slots=True)
class Sample:
    """One candidate: confidence-model features plus AM and fair-average scores."""

    sample_id: str
    features: tuple[float, ...]
    fa_score: int
    am_score: int
    fa_level: int
    am_level: int

    @property
    def correct(self) -> bool:
        """Whether the automarker places the candidate in the fair-average band."""

        return self.am_level == self.fa_level


__all__ = ["GeneratorConfig", "Sample"]
