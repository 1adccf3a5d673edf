"""
Closed-form evaluation of the bifurcation function

    B(eta, alpha) = 3 exp(-eta) / A_0(eta) - (3 - 2 eta + 4 eta^2 / alpha)

and of everything derived from it.

Responsibilities:
- B and its first three eta-derivatives, written in q = exp(-eta)/A_0 and the
  ratios r_k = A_k/A_0 so that no formula ever touches a raw (overflowing) A_k
- The derivative at a zero in factored form and the roots eta_bar_1,
  eta_bar_2 of its quadratic factor
- The equivalent formulation f(eta) = A_0 / (A_2 - A_4): nonzero zeros of B
  are exactly the solutions of f(eta) = alpha, and
  B(eta, alpha) = 4 eta^2 (1/f(eta) - 1/alpha)

No root finding happens here; see classify.py.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

from config import FACTORIZED_ZERO_TOL, QUADRATIC_ROOT_TOL
from exceptions import ArgumentError, ContractError, DomainError, NoRealRoots
from models import BEval, EtaBarPair, MomentSet
from moments import compute_moments, moment_grid


TWENTY_THIRDS: float = 20.0 / 3.0
ALPHA_ISOTROPIC_LIMIT: float = 7.5


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0):
        raise ArgumentError(f"alpha must be a positive finite number, got {alpha!r}")
    return alpha


def _moments(eta: float, moments: Optional[MomentSet]) -> MomentSet:
    if moments is not None:
        return moments
    return compute_moments(eta)


def eval_B(eta: float, alpha: float, moments: Optional[MomentSet] = None) -> BEval:
    """
    B(eta, alpha) with its eta-derivatives of order 1 to 3.

    Pass `moments` to reuse a MomentSet already computed at this eta.
    """
    alpha = check_alpha(alpha)
    eta = float(eta)
    m = _moments(eta, moments)
    q, r2, r4, r6 = m.q, m.ratios[2], m.ratios[4], m.ratios[6]
    three_q = 3.0 * q

    b = three_q - (3.0 - 2.0 * eta + 4.0 * eta * eta / alpha)
    b1 = three_q * (r2 - 1.0) + 2.0 - 8.0 * eta / alpha
    b2 = three_q * (1.0 - 2.0 * r2 - r4 + 2.0 * r2 * r2) - 8.0 / alpha
    b3 = three_q * (6.0 * r2**3 - 6.0 * r2 * (r2 + r4) + (3.0 * r2 + 3.0 * r4 + r6) - 1.0)
    return BEval(eta=eta, alpha=alpha, b=b, b1=b1, b2=b2, b3=b3)


def eval_B_grid(etas: Sequence[float], alpha: float) -> np.ndarray:
    """B only, on an array of eta values (used by dense sign scans)."""
    alpha = check_alpha(alpha)
    etas = np.asarray(etas, dtype=float).ravel()
    _, q = moment_grid(etas, kmax=0)
    return 3.0 * q - (3.0 - 2.0 * etas + 4.0 * etas * etas / alpha)


def quadratic_factor(eta: float, alpha: float) -> float:
    """eta^2 + eta alpha / 2 + (alpha / 2)(15/2 - alpha)."""
    return eta * eta + eta * alpha / 2.0 + (alpha / 2.0) * (7.5 - alpha)


def factor_form(alpha: float) -> str:
    """
    Which form the quadratic factor takes.

    'distinct' for alpha > 20/3 (two real roots), 'double' at 20/3
    ((eta + alpha/4)^2), 'positive-definite' below it.
    """
    alpha = check_alpha(alpha)
    if math.isclose(alpha, TWENTY_THIRDS, rel_tol=4e-16, abs_tol=0.0):
        return "double"
    return "distinct" if alpha > TWENTY_THIRDS else "positive-definite"


def eta_bar(alpha: float) -> EtaBarPair:
    """
    Roots of the quadratic factor.

    eta_bar_1 = -(alpha/4)(1 + 3 sqrt(1 - 20/(3 alpha))); eta_bar_2 comes from
    the product of the roots, so it is exactly 0 at alpha = 7.5.

    Raises:
        NoRealRoots: alpha < 20/3.
    """
    form = factor_form(alpha)
    alpha = float(alpha)
    if form == "positive-definite":
        raise NoRealRoots(alpha, 15.0 * alpha / 4.0 * (1.0 - 3.0 * alpha / 20.0))
    if form == "double":
        return EtaBarPair(alpha=alpha, eta_bar_1=-alpha / 4.0, eta_bar_2=-alpha / 4.0)
    disc = 1.0 - 20.0 / (3.0 * alpha)
    first = -(alpha / 4.0) * (1.0 + 3.0 * math.sqrt(disc))
    product = (alpha / 2.0) * (7.5 - alpha)
    # + 0.0 turns the -0.0 at alpha = 7.5 into 0.0
    return EtaBarPair(alpha=alpha, eta_bar_1=first, eta_bar_2=product / first + 0.0)


def b1_factorized(eta_star: float, alpha: float, check: bool = True) -> float:
    """
    dB/deta at a zero, in factored form:
    -(8 eta / (3 alpha^2)) (eta^2 + eta alpha/2 + (alpha/2)(15/2 - alpha)).

    With check=True the zero is verified loosely (|B| <= 1e-8 (1 + eta^2));
    check=False evaluates the formula as is.

    Raises:
        ContractError: check=True and eta_star is not a zero of B(., alpha).
    """
    alpha = check_alpha(alpha)
    eta_star = float(eta_star)
    if check:
        residual = abs(eval_B(eta_star, alpha).b)
        if residual > FACTORIZED_ZERO_TOL * (1.0 + eta_star * eta_star):
            raise ContractError(
                f"eta={eta_star!r} is not a zero of B(., {alpha!r}): |B| = {residual:.3e}",
                measured=residual,
            )
    return -(8.0 * eta_star / (3.0 * alpha * alpha)) * quadratic_factor(eta_star, alpha)


def b2_at_quadratic_root(eta_star: float, alpha: float, require_zero: bool = False) -> float:
    """
    (4 / (3 alpha)) (eta + 15 - 2 alpha): the second derivative at a zero that
    also annihilates the quadratic factor.

    eta_star must be one of eta_bar_1, eta_bar_2; require_zero=True also
    insists that B(eta_star, alpha) = 0, which is the only situation in which
    the value equals eval_B(...).b2.

    Raises:
        DomainError: alpha <= 20/3.
        ContractError: eta_star is not a root of the quadratic factor, or
            require_zero and B(eta_star, alpha) != 0.
    """
    alpha = check_alpha(alpha)
    if alpha <= TWENTY_THIRDS:
        raise DomainError(f"alpha must exceed 20/3, got {alpha!r}")
    eta_star = float(eta_star)
    roots = eta_bar(alpha)
    distance = min(abs(eta_star - roots.eta_bar_1), abs(eta_star - roots.eta_bar_2))
    if distance > QUADRATIC_ROOT_TOL * max(1.0, abs(eta_star)):
        raise ContractError(
            f"eta={eta_star!r} is not a root of the quadratic factor at alpha={alpha!r} "
            f"(distance {distance:.3e})",
            measured=distance,
        )
    if require_zero:
        residual = abs(eval_B(eta_star, alpha).b)
        if residual > FACTORIZED_ZERO_TOL * (1.0 + eta_star * eta_star):
            raise ContractError(
                f"eta={eta_star!r} is not a zero of B(., {alpha!r}): |B| = {residual:.3e}",
                measured=residual,
            )
    return (4.0 / (3.0 * alpha)) * (eta_star + 15.0 - 2.0 * alpha)


def eval_f(eta: float, moments: Optional[MomentSet] = None) -> float:
    """f(eta) = A_0 / (A_2 - A_4) = 1 / (r_2 - r_4); positive and finite."""
    m = _moments(float(eta), moments)
    return 1.0 / (m.ratios[2] - m.ratios[4])


def f_prime_numerator(eta: float, moments: Optional[MomentSet] = None) -> float:
    """
    (r_4 - r_6) - r_2 (r_2 - r_4), the numerator of f' in ratio form.

    Its sign is the sign of f'; it changes sign exactly once.
    """
    m = _moments(float(eta), moments)
    r2, r4, r6 = m.ratios[2], m.ratios[4], m.ratios[6]
    return (r4 - r6) - r2 * (r2 - r4)


def eval_f_prime(eta: float, moments: Optional[MomentSet] = None) -> float:
    m = _moments(float(eta), moments)
    gap = m.ratios[2] - m.ratios[4]
    return f_prime_numerator(m.eta, m) / (gap * gap)


def b_via_f(eta: float, alpha: float) -> float:
    """B through the equivalent formulation, 4 eta^2 (1/f(eta) - 1/alpha)."""
    alpha = check_alpha(alpha)
    m = compute_moments(float(eta))
    return 4.0 * m.eta * m.eta * ((m.ratios[2] - m.ratios[4]) - 1.0 / alpha)


def zero_relation_residual(eta_star: float, alpha: float) -> float:
    """|r_2(eta) - (alpha - 2 eta) / (3 alpha)|, zero at every zero of B."""
    alpha = check_alpha(alpha)
    m = compute_moments(float(eta_star))
    return abs(m.ratios[2] - (alpha - 2.0 * m.eta) / (3.0 * alpha))


def zero_condition_residual(eta_star: float, alpha: float) -> float:
    """|3 q - (3 - 2 eta + 4 eta^2 / alpha)| / (1 + eta^2)."""
    eta_star = float(eta_star)
    return abs(eval_B(eta_star, alpha).b) / (1.0 + eta_star * eta_star)


def g_combination(eta: float) -> float:
    """
    exp(eta) (A_0 (A_4 - A_6) - A_2 (A_2 - A_4)), strictly increasing in eta.

    Evaluated as exp(eta + 2 log A_0) times the ratio-form numerator, which
    stays finite for |eta| up to about 700.
    """
    m = compute_moments(float(eta))
    return math.exp(m.eta + 2.0 * m.log_a0) * f_prime_numerator(m.eta, m)


__all__ = [
    "TWENTY_THIRDS",
    "ALPHA_ISOTROPIC_LIMIT",
    "check_alpha",
    "eval_B",
    "eval_B_grid",
    "quadratic_factor",
    "factor_form",
    "eta_bar",
    "b1_factorized",
    "b2_at_quadratic_root",
    "eval_f",
    "f_prime_numerator",
    "eval_f_prime",
    "b_via_f",
    "zero_relation_residual",
    "zero_condition_residual",
    "g_combination",
]
