"""
Exception hierarchy for ms-kit.

Argument and domain errors subclass ValueError so plain callers can keep
catching ValueError; the CLI maps them to usage errors (exit 2), everything
else under MsKitError to a consistency failure (exit 1).
"""

from __future__ import annotations

from typing import Optional


class MsKitError(Exception):
    """Base class for every error raised by this package."""


class ArgumentError(MsKitError, ValueError):
    """An argument has the wrong shape (odd kmax, alpha <= 0, bad range)."""


class DomainError(MsKitError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NoRealRoots(DomainError):
    """The quadratic factor has no real roots (alpha < 20/3)."""

    def __init__(self, alpha: float, offset: float) -> None:
        self.alpha = alpha
        # (eta + alpha/4)^2 + offset with offset > 0: the third factor form.
        self.offset = offset
        super().__init__(
            f"no real roots for alpha={alpha!r} < 20/3: quadratic factor is "
            f"(eta + alpha/4)^2 + {offset!r}"
        )


class ContractError(MsKitError):
    """A runtime-checked precondition does not hold."""

    def __init__(self, message: str, measured: Optional[float] = None) -> None:
        self.measured = measured
        super().__init__(message)


class OracleFailure(MsKitError):
    """A reference computation did not converge or contradicted a proven sign."""


class InconclusiveCheck(MsKitError):
    """A check cannot certify its answer at these arguments."""


class InternalError(MsKitError):
    """Something that must not happen did; points at an upstream bug."""


__all__ = [
    "MsKitError",
    "ArgumentError",
    "DomainError",
    "NoRealRoots",
    "ContractError",
    "OracleFailure",
    "InconclusiveCheck",
    "InternalError",
]
