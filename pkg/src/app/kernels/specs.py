"""Kernel configuration records shared by the loss functions and the CLI."""

from __future__ import annotations

from typing import Any, Literal, Mapping

from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.special import expit

KernelKind = Literal["linear", "log", "exp", "gaussian", "constant-one"]
WeightScheme = Literal["occ_style", "literal"]

KERNEL_KINDS: tuple[str, ...] = ("linear", "log", "exp", "gaussian", "constant-one")
WEIGHT_SCHEMES: tuple[str, ...] = ("occ_style", "literal")

# Shape defaults for the tuned kernels; linear and constant-one take no parameters.
DEFAULT_ALPHA: dict[str, float] = {"log": 3.0, "exp": 1.0, "gaussian": 0.5}
DEFAULT_BETA: dict[str, float] = {"exp": 3.0}

_RECORD_KEYS = ("kind", "alpha", "beta", "weight_scheme")


class KernelSpec(BaseModel):
    """Kernel kind, shape hyperparameters and weight-scheme choice.

    ``alpha`` is only meaningful for the log, exp and gaussian kernels and
    ``beta`` only for the exp kernel. Missing values are filled from
    :data:`DEFAULT_ALPHA` / :data:`DEFAULT_BETA`; supplying a parameter to a
    kernel that does not use it is rejected.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: KernelKind
    alpha: float | None = Field(default=None, description="Kernel shape (dimensionless)")
    beta: float | None = Field(default=None, description="Exp-kernel offset in class units")
    weight_scheme: WeightScheme = "occ_style"

    @model_validator(mode="before")
    @classmethod
    def _fill_defaults(cls, data: Any) -> Any:
        if not isinstance(data, Mapping):
            return data
        values = dict(data)
        kind = values.get("kind")
        if values.get("alpha") is None and kind in DEFAULT_ALPHA:
            values["alpha"] = DEFAULT_ALPHA[kind]
        if values.get("beta") is None and kind in DEFAULT_BETA:
            values["beta"] = DEFAULT_BETA[kind]
        return values

    @model_validator(mode="after")
    def _check_parameters(self) -> "KernelSpec":
        if self.kind in DEFAULT_ALPHA:
            if self.alpha is None or not self.alpha > 0:
                raise ValueError(f"alpha must be > 0 for the {self.kind} kernel, got {self.alpha}")
        elif self.alpha is not None:
            raise ValueError(f"alpha does not apply to the {self.kind} kernel")

        if self.kind == "exp":
            if self.beta is None or not self.beta >= 0:
                raise ValueError(f"beta must be >= 0 for the exp kernel, got {self.beta}")
        elif self.beta is not None:
            raise ValueError(f"beta does not apply to the {self.kind} kernel")

        # occ_style weight 2 - kernel is smallest at zero distance and must stay positive
        if self.kind == "exp" and self.weight_scheme == "occ_style":
            peak = self.alpha * float(expit(self.beta))
            if peak >= 2.0:
                raise ValueError(
                    f"exp kernel peak alpha*expit(beta) = {peak:.6g} must be < 2 under occ_style weights "
                    f"(alpha={self.alpha}, beta={self.beta})"
                )
        return self

    def to_record(self) -> str:
        """Render as ``kind=<name> alpha=<real> beta=<real> weight_scheme=<name>``."""

        alpha = "" if self.alpha is None else repr(float(self.alpha))
        beta = "" if self.beta is None else repr(float(self.beta))
        return f"kind={self.kind} alpha={alpha} beta={beta} weight_scheme={self.weight_scheme}"

    @classmethod
    def from_record(cls, record: str) -> "KernelSpec":
        """Parse the output of :meth:`to_record`; empty values mean "not set"."""

        fields: dict[str, str] = {}
        for token in record.split():
            key, sep, value = token.partition("=")
            if not sep:
                raise ValueError(f"Kernel record token '{token}' is not key=value")
            if key not in _RECORD_KEYS:
                raise ValueError(
                    f"Unknown kernel record key '{key}'. Allowed: {list(_RECORD_KEYS)}"
                )
            fields[key] = value

        if "kind" not in fields:
            raise ValueError("Kernel record is missing 'kind'")

        payload: dict[str, Any] = {"kind": fields["kind"]}
        for key in ("alpha", "beta"):
            if fields.get(key):
                payload[key] = float(fields[key])
        if fields.get("weight_scheme"):
            payload["weight_scheme"] = fields["weight_scheme"]
        return cls(**payload)


__all__ = [
    "KernelSpec",
    "KernelKind",
    "WeightScheme",
    "KERNEL_KINDS",
    "WEIGHT_SCHEMES",
    "DEFAULT_ALPHA",
    "DEFAULT_BETA",
]
