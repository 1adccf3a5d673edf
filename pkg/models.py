"""
Data models shared across the numerical modules and the CLI.

Plain frozen dataclasses; no behaviour beyond small derived views.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple


BRANCHES: Tuple[str, ...] = ("iso", "neg1", "neg2", "pos")


@dataclass(frozen=True)
class MomentSet:
    """
    Scaled Boltzmann moments at one eta.

    Attributes:
        eta: Concentration parameter.
        kmax: Largest even moment index held.
        scaled: k -> A_k(eta) for eta >= 0, k -> exp(eta) A_k(eta) for eta < 0.
        ratios: k -> A_k / A_0 (scale-free).
        q: exp(-eta) / A_0. Underflows to 0.0 once eta exceeds roughly 745.
        log_a0: Natural log of the unscaled A_0.
    """

    eta: float
    kmax: int
    scaled: Dict[int, float]
    ratios: Dict[int, float]
    q: float
    log_a0: float

    @property
    def scale_exponent(self) -> float:
        """A_k = scaled[k] * exp(scale_exponent)."""
        return -self.eta if self.eta < 0 else 0.0

    @property
    def recurrence_rhs(self) -> float:
        """exp(-eta) in the same scaling as `scaled`."""
        return 1.0 if self.eta < 0 else math.exp(-self.eta)


@dataclass(frozen=True)
class BEval:
    """B(eta, alpha) and its first three eta-derivatives."""

    eta: float
    alpha: float
    b: float
    b1: float
    b2: float
    b3: float

    def derivative(self, order: int) -> float:
        return (self.b, self.b1, self.b2, self.b3)[order]


@dataclass(frozen=True)
class EtaBarPair:
    """Real roots eta_bar_1 <= eta_bar_2 of the quadratic factor."""

    alpha: float
    eta_bar_1: float
    eta_bar_2: float


@dataclass(frozen=True)
class ZeroRecord:
    """
    One zero of B(., alpha).

    bracket is a certified sign-change interval for simple zeros found by
    bisection; for eta = 0 (and the tangential zero at alpha = alpha*) it is
    the degenerate interval (eta, eta).
    """

    eta: float
    multiplicity: int
    bracket: Tuple[float, float]
    side: str


@dataclass(frozen=True)
class CriticalData:
    """The minimiser of f and the critical intensity alpha* = f(eta_min)."""

    eta_min: float
    alpha_star: float
    f_second_at_min: float


@dataclass(frozen=True)
class ZeroSet:
    """All zeros of B(., alpha), ascending in eta, with the regime label."""

    alpha: float
    zeros: List[ZeroRecord]
    case_label: str
    critical: Optional[CriticalData] = None

    @property
    def count(self) -> int:
        return len(self.zeros)

    @property
    def negative(self) -> List[ZeroRecord]:
        return [z for z in self.zeros if z.side == "negative"]

    @property
    def positive(self) -> List[ZeroRecord]:
        return [z for z in self.zeros if z.side == "positive"]

    @property
    def origin(self) -> Optional[ZeroRecord]:
        for z in self.zeros:
            if z.side == "origin":
                return z
        return None


@dataclass(frozen=True)
class BranchRow:
    """One row of a bifurcation sweep."""

    alpha: float
    branch: str
    eta: float
    order_parameter: float
    case_label: str


@dataclass(frozen=True)
class BranchTable:
    rows: List[BranchRow] = field(default_factory=list)

    def branch(self, name: str) -> List[BranchRow]:
        return [row for row in self.rows if row.branch == name]


@dataclass(frozen=True)
class OracleReport:
    """
    Outcome of one named verification check.

    passed is True exactly when max_residual <= tolerance.
    """

    name: str
    max_residual: float
    tolerance: float
    samples: int
    passed: bool
    detail: str = ""

    @classmethod
    def from_residual(
        cls,
        name: str,
        max_residual: float,
        tolerance: float,
        samples: int,
        detail: str = "",
    ) -> "OracleReport":
        passed = bool(max_residual <= tolerance)
        return cls(
            name=name,
            max_residual=float(max_residual),
            tolerance=float(tolerance),
            samples=int(samples),
            passed=passed,
            detail=detail,
        )


__all__ = [
    "BRANCHES",
    "MomentSet",
    "BEval",
    "EtaBarPair",
    "ZeroRecord",
    "CriticalData",
    "ZeroSet",
    "BranchRow",
    "BranchTable",
    "OracleReport",
]
