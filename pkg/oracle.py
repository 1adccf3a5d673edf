"""
Brute-force reference computations.

Each routine is slow, simple and built differently from the main path it
checks:
- quad_moment: Romberg (trapezoid + Richardson) on a uniform grid, where the
  main path uses graded Gauss-Legendre panels. It never calls
  compute_moments.
- sign_scan: counts sign changes of B on a dense grid.
- golden_min_f: golden-section search for the minimum of f, where the main
  path bisects on the sign of f'.
- positivity_2d: the derivative of exp(eta)(A_0(A_4 - A_6) - A_2(A_2 - A_4))
  by finite differences against the double integral it equals.
- fd_check_B: closed-form eta-derivatives of B against finite differences.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Tuple

import numpy as np

from bcurve import eval_B, eval_B_grid, eval_f, g_combination
from config import (
    FD_RELATIVE_STEP,
    ORACLE_2D_NODES,
    ORACLE_ETA_LIMIT,
    ORACLE_GOLDEN_BRACKET,
    ORACLE_GOLDEN_WIDTH,
    ORACLE_MAX_LEVELS,
    ORACLE_POSITIVITY_STEP,
    ORACLE_REL_TOL,
)
from exceptions import ArgumentError, DomainError, OracleFailure


logger = logging.getLogger(__name__)

PHI_RATIO: float = 2.0 / (1.0 + math.sqrt(5.0))
POSITIVITY_ETA_LIMIT: float = 50.0
GOLDEN_MAX_ITER: int = 500
# Exact value of (1/2) int_0^1 int_0^1 (x^2 - y^2)^2 (1 - x^2 - y^2)^2 dx dy.
POSITIVITY_AT_ZERO: float = 4.0 / 525.0


def quad_moment(eta: float, k: int) -> float:
    """
    Reference A_k(eta), scaled by exp(eta) when eta < 0.

    Romberg integration of the scaled integrand; the tableau starts once the
    trapezoid spacing resolves the boundary layer and stops when successive
    diagonal entries agree to 1e-13 relative.

    Raises:
        DomainError: |eta| > 500.
        OracleFailure: no convergence within 24 halvings.
    """
    eta = float(eta)
    if not abs(eta) <= ORACLE_ETA_LIMIT:
        raise DomainError(f"quad_moment supports |eta| <= {ORACLE_ETA_LIMIT:g}, got {eta!r}")
    if k < 0:
        raise ArgumentError(f"k must be non-negative, got {k!r}")

    def integrand(z: np.ndarray) -> np.ndarray:
        if eta >= 0:
            return z**k * np.exp(-eta * z * z)
        return z**k * np.exp(eta * (1.0 - z) * (1.0 + z))

    start_level = max(2, int(math.ceil(math.log2(4.0 * (1.0 + abs(eta))))))
    trapezoid = 0.5 * float(np.sum(integrand(np.array([0.0, 1.0]))))
    previous_row = None
    for level in range(1, ORACLE_MAX_LEVELS + 1):
        h = 0.5**level
        midpoints = (2.0 * np.arange(2 ** (level - 1)) + 1.0) * h
        trapezoid = 0.5 * trapezoid + h * float(np.sum(integrand(midpoints)))
        if level < start_level:
            continue
        row = [trapezoid]
        if previous_row is not None:
            for j in range(1, len(previous_row) + 1):
                row.append(row[j - 1] + (row[j - 1] - previous_row[j - 1]) / (4.0**j - 1.0))
            if len(row) >= 3 and abs(row[-1] - previous_row[-1]) <= ORACLE_REL_TOL * abs(row[-1]):
                logger.debug("quad_moment(eta=%g, k=%d) converged at level %d", eta, k, level)
                return row[-1]
        previous_row = row
    raise OracleFailure(f"quad_moment(eta={eta!r}, k={k}) did not converge in {ORACLE_MAX_LEVELS} levels")


def sign_scan(alpha: float, lo: float, hi: float, n: int) -> int:
    """
    Number of sign changes of B(., alpha) on n uniform points in [lo, hi].

    Grid points where B is exactly zero are skipped, so a change of sign
    through an exact grid zero still counts once.
    """
    if not lo < hi:
        raise ArgumentError(f"need lo < hi, got [{lo!r}, {hi!r}]")
    if n < 1000:
        raise ArgumentError(f"need at least 1000 points, got {n!r}")
    values = eval_B_grid(np.linspace(lo, hi, int(n)), alpha)
    signs = np.sign(values)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def golden_min_f(
    lo: float = ORACLE_GOLDEN_BRACKET[0],
    hi: float = ORACLE_GOLDEN_BRACKET[1],
) -> Tuple[float, float]:
    """
    Golden-section minimisation of f on [lo, hi] down to width 1e-12.

    Returns:
        (eta, f(eta)) at the midpoint of the final bracket.
    """
    if not lo < hi:
        raise ArgumentError(f"need lo < hi, got [{lo!r}, {hi!r}]")
    x1 = hi - PHI_RATIO * (hi - lo)
    x2 = lo + PHI_RATIO * (hi - lo)
    f1, f2 = eval_f(x1), eval_f(x2)
    for _ in range(GOLDEN_MAX_ITER):
        if hi - lo <= ORACLE_GOLDEN_WIDTH:
            break
        if f2 > f1:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - PHI_RATIO * (hi - lo)
            f1 = eval_f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + PHI_RATIO * (hi - lo)
            f2 = eval_f(x2)
    eta = 0.5 * (lo + hi)
    return eta, eval_f(eta)


def positivity_integrand(x: np.ndarray, y: np.ndarray, eta: float) -> np.ndarray:
    s = x * x + y * y
    return 0.5 * (x * x - y * y) ** 2 * (1.0 - s) ** 2 * np.exp(eta * (1.0 - s))


def positivity_2d(eta: float) -> Tuple[float, float]:
    """
    Finite-difference derivative of g(eta) = exp(eta)(A_0(A_4 - A_6) - A_2(A_2 - A_4))
    against the tensor Gauss-Legendre value of its integral representation.

    The weight is exp(eta (1 - x^2 - y^2)): differentiating
    exp(eta) A_a A_b = int int x^a y^b exp(-eta (x^2 + y^2 - 1)) brings down
    (1 - x^2 - y^2), never its negative.

    Returns:
        (lhs, rhs) = (centred difference with h = 1e-4, double integral).

    Raises:
        DomainError: |eta| > 50.
        OracleFailure: the double integral is not positive.
    """
    eta = float(eta)
    if not abs(eta) <= POSITIVITY_ETA_LIMIT:
        raise DomainError(f"positivity_2d supports |eta| <= {POSITIVITY_ETA_LIMIT:g}, got {eta!r}")
    h = ORACLE_POSITIVITY_STEP
    lhs = (g_combination(eta + h) - g_combination(eta - h)) / (2.0 * h)

    nodes, weights = np.polynomial.legendre.leggauss(ORACLE_2D_NODES)
    x = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    grid_x, grid_y = np.meshgrid(x, x, indexing="ij")
    rhs = float(np.einsum("i,j,ij->", w, w, positivity_integrand(grid_x, grid_y, eta)))
    if not rhs > 0:
        raise OracleFailure(f"double integral at eta={eta!r} is not positive: {rhs!r}")
    return lhs, rhs


def richardson_derivative(func: Callable[[float], float], x: float, h: float) -> float:
    """Centred difference at steps h and h/2, combined to cancel the h^2 term."""
    coarse = (func(x + h) - func(x - h)) / (2.0 * h)
    fine = (func(x + 0.5 * h) - func(x - 0.5 * h)) / h
    return (4.0 * fine - coarse) / 3.0


def fd_check_B(eta: float, alpha: float, order: int) -> float:
    """
    Relative deviation of the closed-form derivative of the given order from
    a Richardson-improved difference of the next-lower one.

    The deviation is |closed - fd| / max(1, |closed|).
    """
    if order not in (1, 2, 3):
        raise ArgumentError(f"order must be 1, 2 or 3, got {order!r}")
    eta = float(eta)
    closed = eval_B(eta, alpha).derivative(order)
    h = FD_RELATIVE_STEP * max(1.0, abs(eta))
    fd = richardson_derivative(lambda x: eval_B(x, alpha).derivative(order - 1), eta, h)
    return abs(closed - fd) / max(1.0, abs(closed))


__all__ = [
    "POSITIVITY_AT_ZERO",
    "quad_moment",
    "sign_scan",
    "golden_min_f",
    "positivity_integrand",
    "positivity_2d",
    "richardson_derivative",
    "fd_check_B",
]
