"""
Zeros of B(., alpha) and the regimes they fall into.

Responsibilities:
- Locate eta_min, the unique minimiser of f, by bisection on the sign of f'
- The critical intensity alpha* = f(eta_min), cross-checked against an
  independent golden-section search
- classify(alpha): every zero of B(., alpha) with multiplicity, bracket, side,
  and the regime label (i)-(v)
- sweep: bifurcation branch tables over an alpha grid
- zero_count_oracle_check: classifier count against a dense sign scan

Nonzero roots are found on f(eta) = alpha; f is monotone on either side of
eta_min, so each side holds at most one. B only confirms them.
"""

from __future__ import annotations

import functools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple

import numpy as np

from bcurve import (
    ALPHA_ISOTROPIC_LIMIT,
    TWENTY_THIRDS,
    check_alpha,
    eval_B,
    eval_f,
    eval_f_prime,
    f_prime_numerator,
)
from config import (
    ALPHA_BOUNDARY_BAND,
    BISECTION_MAX_ITER,
    BISECTION_WIDTH_FACTOR,
    CRITICAL_ORACLE_TOL,
    ETA_MIN_BRACKET_LIMIT,
    ETA_MIN_BRACKET_START,
    MULTIPLICITY_THRESHOLD,
    NEWTON_POLISH_STEPS,
    SIGN_SCAN_POINTS,
    THREADS,
    ZERO_TOL,
)
from exceptions import ArgumentError, InconclusiveCheck, InternalError
from models import BranchRow, BranchTable, CriticalData, ZeroRecord, ZeroSet
from oracle import golden_min_f, sign_scan


logger = logging.getLogger(__name__)

# Sign pattern of the zeros, in ascending eta, for each regime.
EXPECTED_SIDES = {
    "i": ("negative", "origin", "positive"),
    "ii": ("negative", "origin"),
    "iii": ("negative", "negative", "origin"),
    "iv": ("negative", "origin"),
    "v": ("origin",),
}
ORACLE_CHECK_MARGIN: float = 1e-6


def _bisect(func: Callable[[float], float], lo: float, hi: float) -> Tuple[float, float]:
    """
    Shrink [lo, hi] around a sign change of func down to 1e-13 max(1, |eta|).

    Returns the final bracket; a degenerate bracket means func hit zero exactly.
    """
    f_lo, f_hi = func(lo), func(hi)
    if f_lo == 0.0:
        return lo, lo
    if f_hi == 0.0:
        return hi, hi
    if (f_lo < 0) == (f_hi < 0):
        raise InternalError(f"no sign change on [{lo!r}, {hi!r}]: {f_lo!r}, {f_hi!r}")
    for iteration in range(BISECTION_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if hi - lo <= BISECTION_WIDTH_FACTOR * max(1.0, abs(mid)) or mid in (lo, hi):
            logger.debug("bisection converged after %d steps on [%r, %r]", iteration, lo, hi)
            break
        f_mid = func(mid)
        if f_mid == 0.0:
            return mid, mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return lo, hi


def find_eta_min() -> float:
    """
    The unique root of the f' numerator (r_4 - r_6) - r_2 (r_2 - r_4).

    The numerator is negative left of the root and positive right of it. The
    bracket starts at [-8, 0] (the numerator is 4/315 > 0 at 0) and expands
    to the left geometrically.

    Raises:
        InternalError: no sign change before eta = -1000.
    """
    hi = 0.0
    lo = ETA_MIN_BRACKET_START
    while f_prime_numerator(lo) >= 0.0:
        logger.debug("expanding eta_min bracket past %g", lo)
        lo *= 2.0
        if lo < ETA_MIN_BRACKET_LIMIT:
            raise InternalError("f' numerator has no sign change on [-1000, 0]; moments are wrong")
    lo, hi = _bisect(f_prime_numerator, lo, hi)
    return 0.5 * (lo + hi)


def _f_second(eta: float) -> float:
    h = 1e-4 * max(1.0, abs(eta))
    return (eval_f_prime(eta + h) - eval_f_prime(eta - h)) / (2.0 * h)


@functools.lru_cache(maxsize=1)
def critical_alpha() -> CriticalData:
    """
    eta_min and alpha* = f(eta_min), computed once per process.

    Raises:
        InternalError: disagreement with the golden-section search beyond 1e-8,
            or alpha* outside (20/3, 7.5).
    """
    eta_min = find_eta_min()
    alpha_star = eval_f(eta_min)
    data = CriticalData(eta_min=eta_min, alpha_star=alpha_star, f_second_at_min=_f_second(eta_min))

    _, golden_value = golden_min_f()
    gap = abs(golden_value - alpha_star)
    if gap > CRITICAL_ORACLE_TOL:
        raise InternalError(
            f"alpha* = {alpha_star!r} disagrees with golden-section value {golden_value!r} ({gap:.3e})"
        )
    if not TWENTY_THIRDS < alpha_star < ALPHA_ISOTROPIC_LIMIT:
        raise InternalError(f"alpha* = {alpha_star!r} lies outside (20/3, 7.5)")
    logger.info("eta_min = %.15g, alpha* = %.15g", eta_min, alpha_star)
    return data


def expected_case(alpha: float, critical: CriticalData) -> str:
    """The regime label of alpha alone, with the +-1e-9 boundary band."""
    if abs(alpha - ALPHA_ISOTROPIC_LIMIT) <= ALPHA_BOUNDARY_BAND:
        return "ii"
    if abs(alpha - critical.alpha_star) <= ALPHA_BOUNDARY_BAND:
        return "iv"
    if alpha > ALPHA_ISOTROPIC_LIMIT:
        return "i"
    if alpha > critical.alpha_star:
        return "iii"
    return "v"


def _multiplicity(eta: float, alpha: float) -> int:
    """Order of the first eta-derivative of B above the 1e-8 threshold."""
    ev = eval_B(eta, alpha)
    for order in (1, 2, 3):
        if abs(ev.derivative(order)) > MULTIPLICITY_THRESHOLD:
            return order
    return 3


def _polish(eta: float, bracket: Tuple[float, float], alpha: float) -> float:
    """Guarded Newton steps on f(eta) - alpha; a step leaving the bracket is dropped."""
    lo, hi = bracket
    for _ in range(NEWTON_POLISH_STEPS):
        slope = eval_f_prime(eta)
        if slope == 0.0 or not math.isfinite(slope):
            break
        candidate = eta - (eval_f(eta) - alpha) / slope
        if not lo <= candidate <= hi:
            break
        eta = candidate
    return eta


def _solve_f(alpha: float, lo: float, hi: float) -> ZeroRecord:
    bracket = _bisect(lambda eta: eval_f(eta) - alpha, lo, hi)
    eta = _polish(0.5 * (bracket[0] + bracket[1]), bracket, alpha)
    b_residual = abs(eval_B(eta, alpha).b)
    f_residual = abs(eval_f(eta) - alpha)
    if b_residual > ZERO_TOL * (1.0 + eta * eta) or f_residual > ZERO_TOL * alpha:
        logger.warning(
            "root eta=%r at alpha=%r: |B| = %.3e, |f - alpha| = %.3e", eta, alpha, b_residual, f_residual
        )
    side = "negative" if eta < 0 else "positive"
    # f - alpha changes sign across the bracket, and so does B = 4 eta^2 (1/f - 1/alpha)
    return ZeroRecord(eta=eta, multiplicity=1, bracket=bracket, side=side)


def classify(alpha: float, critical: Optional[CriticalData] = None) -> ZeroSet:
    """
    All zeros of B(., alpha), ascending, with the regime label.

    Args:
        alpha: Positive intensity.
        critical: CriticalData to use; computed (once) when omitted.

    Raises:
        ArgumentError: alpha <= 0.
    """
    alpha = check_alpha(alpha)
    crit = critical if critical is not None else critical_alpha()
    label = expected_case(alpha, crit)

    zeros: List[ZeroRecord] = []
    if label == "iv":
        eta = crit.eta_min
        zeros.append(
            ZeroRecord(eta=eta, multiplicity=_multiplicity(eta, alpha), bracket=(eta, eta), side="negative")
        )
    elif label in ("i", "ii", "iii"):
        # f > -eta and f > 2 eta keep both outer endpoints above alpha
        left = -max(alpha, abs(crit.eta_min)) - 1.0
        zeros.append(_solve_f(alpha, left, crit.eta_min))
        if label != "ii":
            # at alpha = 7.5 the right-hand solution of f = alpha is eta = 0 itself
            zeros.append(_solve_f(alpha, crit.eta_min, alpha / 2.0 + 1.0))

    zeros.append(
        ZeroRecord(eta=0.0, multiplicity=3 if label == "ii" else 2, bracket=(0.0, 0.0), side="origin")
    )
    zeros.sort(key=lambda z: z.eta)

    sides = tuple(z.side for z in zeros)
    if sides != EXPECTED_SIDES[label]:
        logger.warning("alpha=%r: zero pattern %s does not match case %s", alpha, sides, label)
        label = "boundary-ambiguous"
    return ZeroSet(alpha=alpha, zeros=zeros, case_label=label, critical=crit)


def _branch_name(record: ZeroRecord, eta_min: float) -> str:
    if record.side == "origin":
        return "iso"
    if record.eta <= eta_min:
        return "neg1"
    return "neg2" if record.eta < 0 else "pos"


def _rows_for(zero_set: ZeroSet) -> List[BranchRow]:
    eta_min = zero_set.critical.eta_min if zero_set.critical else 0.0
    rows = []
    for record in zero_set.zeros:
        order = 0.0 if record.eta == 0.0 else -record.eta / zero_set.alpha
        rows.append(
            BranchRow(
                alpha=zero_set.alpha,
                branch=_branch_name(record, eta_min),
                eta=record.eta,
                order_parameter=order,
                case_label=zero_set.case_label,
            )
        )
    return rows


def sweep(
    alpha_min: float,
    alpha_max: float,
    steps: int,
    critical: Optional[CriticalData] = None,
    workers: Optional[int] = None,
) -> BranchTable:
    """
    Classify every alpha on a uniform grid and lay the zeros out as branches.

    Rows are sorted by (alpha, branch) whatever the number of workers; the
    worker count defaults to MS_KIT_THREADS (0 = let the pool decide).
    """
    if int(steps) != steps or steps < 2:
        raise ArgumentError(f"steps must be an integer >= 2, got {steps!r}")
    alpha_min, alpha_max = float(alpha_min), float(alpha_max)
    if not (0 < alpha_min < alpha_max and math.isfinite(alpha_max)):
        raise ArgumentError(f"need 0 < alpha_min < alpha_max, got [{alpha_min!r}, {alpha_max!r}]")
    crit = critical if critical is not None else critical_alpha()
    grid = [float(a) for a in np.linspace(alpha_min, alpha_max, int(steps))]

    if workers is None:
        workers = THREADS
    if workers == 1:
        zero_sets = [classify(a, crit) for a in grid]
    else:
        with ThreadPoolExecutor(max_workers=workers if workers > 0 else None) as pool:
            zero_sets = list(pool.map(lambda a: classify(a, crit), grid))

    rows = [row for zero_set in zero_sets for row in _rows_for(zero_set)]
    rows.sort(key=lambda row: (row.alpha, row.branch))
    return BranchTable(rows=rows)


def zero_count_oracle_check(
    alpha: float,
    critical: Optional[CriticalData] = None,
    n: int = SIGN_SCAN_POINTS,
) -> bool:
    """
    Whether the classifier's zero count matches a dense sign scan.

    The scan covers [-alpha - 1, alpha/2 + 1]; the double zero at eta = 0 makes
    no sign change and is added back, so the scan count is changes + 1.

    Raises:
        InconclusiveCheck: alpha within 1e-6 of 7.5 or alpha*, where zeros are
            tangential or triple and a sign scan cannot count them.
    """
    alpha = check_alpha(alpha)
    crit = critical if critical is not None else critical_alpha()
    for boundary in (ALPHA_ISOTROPIC_LIMIT, crit.alpha_star):
        if abs(alpha - boundary) <= ORACLE_CHECK_MARGIN:
            logger.warning("zero count check at alpha=%r is inconclusive (boundary %r)", alpha, boundary)
            raise InconclusiveCheck(f"alpha={alpha!r} is within {ORACLE_CHECK_MARGIN:g} of {boundary!r}")
    changes = sign_scan(alpha, -alpha - 1.0, alpha / 2.0 + 1.0, n)
    return changes + 1 == classify(alpha, crit).count


__all__ = [
    "find_eta_min",
    "critical_alpha",
    "expected_case",
    "classify",
    "sweep",
    "zero_count_oracle_check",
]
