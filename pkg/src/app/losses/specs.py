"""Loss selection records and the loss-name vocabulary used by configs and the CLI."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, model_validator

from src.app.kernels import KernelSpec

LossKind = Literal["cce", "occ", "kwocce"]

# Names accepted on the command line, in comparison-table order.
LOSS_NAMES: tuple[str, ...] = (
    "cce",
    "occ",
    "kwocce-linear",
    "kwocce-log",
    "kwocce-exp",
    "kwocce-gaussian",
)

DEFAULT_EPSILON = 1e-7


class LossSpec(BaseModel):
    """A loss kind plus, for KWOCCE, the kernel that shapes its weight."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: LossKind
    kernel: KernelSpec | None = None

    @model_validator(mode="after")
    def _kernel_matches_kind(self) -> "LossSpec":
        if self.kind == "kwocce" and self.kernel is None:
            raise ValueError("kwocce loss requires a kernel")
        if self.kind != "kwocce" and self.kernel is not None:
            raise ValueError(f"{self.kind} loss does not take a kernel")
        return self

    @property
    def name(self) -> str:
        if self.kernel is None:
            return self.kind
        return f"{self.kind}-{self.kernel.kind}"


def parse_loss(
    name: str,
    *,
    alpha: float | None = None,
    beta: float | None = None,
    weight_scheme: str | None = None,
) -> LossSpec:
    """Build a :class:`LossSpec` from a loss name such as ``kwocce-exp``.

    Any kernel kind is accepted after the ``kwocce-`` prefix, which lets the
    constant-one kernel be selected programmatically even though it is not
    one of :data:`LOSS_NAMES`.
    """

    text = name.strip().lower()
    if text in {"cce", "occ"}:
        if alpha is not None or beta is not None:
            raise ValueError(f"Loss '{text}' does not take kernel parameters")
        if weight_scheme is not None:
            raise ValueError(f"Loss '{text}' does not take a weight scheme")
        return LossSpec(kind=text)

    prefix = "kwocce-"
    if not text.startswith(prefix):
        raise ValueError(f"Unknown loss '{name}'. Valid names: {', '.join(LOSS_NAMES)}")

    kernel_fields: dict[str, object] = {"kind": text[len(prefix):]}
    if alpha is not None:
        kernel_fields["alpha"] = alpha
    if beta is not None:
        kernel_fields["beta"] = beta
    if weight_scheme is not None:
        kernel_fields["weight_scheme"] = weight_scheme
    try:
        kernel = KernelSpec(**kernel_fields)
    except ValueError as exc:
        raise ValueError(
            f"Invalid kernel for loss '{name}': {exc}. Valid names: {', '.join(LOSS_NAMES)}"
        ) from exc
    return LossSpec(kind="kwocce", kernel=kernel)


__all__ = ["LossSpec", "LossKind", "LOSS_NAMES", "DEFAULT_EPSILON", "parse_loss"]
