"""
Named verification checks behind `ms-kit verify`.

Each check measures one quantity against its tolerance and becomes an
OracleReport. Checks never raise: run_checks turns an exception inside a
check into a failed report carrying the message, so one broken check cannot
hide the others.

Check names are stable; the cli accepts them through `verify --only`.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from bcurve import (
    ALPHA_ISOTROPIC_LIMIT,
    TWENTY_THIRDS,
    b1_factorized,
    b2_at_quadratic_root,
    eta_bar,
    eval_B,
    eval_f,
    eval_f_prime,
    zero_relation_residual,
)
from classify import EXPECTED_SIDES, classify, critical_alpha, sweep, zero_count_oracle_check
from exceptions import ArgumentError
from models import CriticalData, OracleReport
from moments import compute_moments, recurrence_residual
from oracle import POSITIVITY_AT_ZERO, fd_check_B, golden_min_f, positivity_2d, quad_moment, sign_scan


logger = logging.getLogger(__name__)

CheckResult = Tuple[float, int, str]

ORIGIN_ALPHAS: Tuple[float, ...] = (0.1, 1.0, TWENTY_THIRDS, 7.5, 10.0, 100.0)
THIRD_DERIVATIVE_ALPHAS: Tuple[float, ...] = (1.0, 7.5, 10.0)
RECURRENCE_ETAS: Tuple[float, ...] = tuple(
    sign * magnitude for magnitude in (1e-3, 1.0, 10.0, 1e2, 1e3, 1e4) for sign in (-1.0, 1.0)
)
ORACLE_ETAS: Tuple[float, ...] = (-500.0, -100.0, -10.0, -1.0, 1.0, 10.0, 100.0, 500.0)
DERIVATIVE_ALPHAS: Tuple[float, ...] = (1.0, 5.0, 7.5, 10.0, 50.0)
ORDERING_ALPHAS: Tuple[float, ...] = (8.0, 10.0, 50.0)
MONOTONICITY_ETAS: Tuple[float, ...] = (-5.0, -1.0, 1.0, 5.0)
MONOTONICITY_ALPHAS: Tuple[float, ...] = (1.0, 5.0, 7.5, 10.0)
POSITIVITY_ETAS: Tuple[float, ...] = (-5.0, 0.0, 5.0)
THIRD_DERIVATIVE_AT_ORIGIN: float = -32.0 / 105.0
F_PRIME_AT_ORIGIN: float = 5.0 / 7.0
ORDERING_MARGIN: float = 1e-6
BOUNDARY_OFFSET: float = 1e-3


def zero_count_table(critical: CriticalData) -> List[Tuple[float, int, str]]:
    """(alpha, expected zero count, expected case) rows of the regime table."""
    star = critical.alpha_star
    return [
        (2.0, 1, "v"),
        (5.0, 1, "v"),
        (TWENTY_THIRDS, 1, "v"),
        (star - BOUNDARY_OFFSET, 1, "v"),
        (star + BOUNDARY_OFFSET, 3, "iii"),
        (7.4, 3, "iii"),
        (7.5, 2, "ii"),
        (7.6, 3, "i"),
        (10.0, 3, "i"),
        (50.0, 3, "i"),
    ]


_REGISTRY: Dict[str, Tuple[Callable[[], CheckResult], float]] = {}


def _check(name: str, tolerance: float) -> Callable[[Callable[[], CheckResult]], Callable[[], CheckResult]]:
    def register(func: Callable[[], CheckResult]) -> Callable[[], CheckResult]:
        _REGISTRY[name] = (func, tolerance)
        return func

    return register


@_check("origin-derivatives", 1e-12)
def _origin_derivatives() -> CheckResult:
    worst = 0.0
    for alpha in ORIGIN_ALPHAS:
        ev = eval_B(0.0, alpha)
        expected_b2 = (16.0 / (15.0 * alpha)) * (alpha - 7.5)
        worst = max(
            worst,
            abs(ev.b),
            abs(ev.b1),
            abs(ev.b2 - expected_b2) / max(1.0, abs(expected_b2)),
        )
    return worst, len(ORIGIN_ALPHAS), "b, b1 absolute; b2 against 16(alpha - 7.5)/(15 alpha)"


@_check("third-derivative-at-origin", 1e-10)
def _third_derivative_at_origin() -> CheckResult:
    worst = max(abs(eval_B(0.0, a).b3 - THIRD_DERIVATIVE_AT_ORIGIN) for a in THIRD_DERIVATIVE_ALPHAS)
    return worst, len(THIRD_DERIVATIVE_ALPHAS), "target -32/105"


@_check("f-anchors", 1e-10)
def _f_anchors() -> CheckResult:
    f_gap = abs(eval_f(0.0) - 7.5)
    fp_gap = abs(eval_f_prime(0.0) - F_PRIME_AT_ORIGIN)
    return max(f_gap, fp_gap), 2, f"|f(0) - 7.5| = {f_gap:.3e}, |f'(0) - 5/7| = {fp_gap:.3e}"


@_check("recurrence-residual", 1e-12)
def _recurrence() -> CheckResult:
    worst, samples = 0.0, 0
    for eta in RECURRENCE_ETAS:
        m = compute_moments(eta)
        for k in (0, 2, 4):
            worst = max(worst, recurrence_residual(m, k))
            samples += 1
    return worst, samples, "scaled (k+1) s_k - 2 eta s_{k+2} - E"


@_check("quadrature-oracle", 1e-12)
def _quadrature_oracle() -> CheckResult:
    worst, samples = 0.0, 0
    for eta in ORACLE_ETAS:
        m = compute_moments(eta)
        reference_s0 = quad_moment(eta, 0)
        worst = max(worst, abs(m.scaled[0] - reference_s0) / reference_s0)
        for k in (2, 4, 6):
            reference = quad_moment(eta, k) / reference_s0
            worst = max(worst, abs(m.ratios[k] - reference) / reference)
            samples += 1
    return worst, samples, "Romberg ratios against Gauss-Legendre ratios"


@_check("series-handover", 1e-12)
def _series_handover() -> CheckResult:
    etas = np.concatenate([-np.linspace(0.4, 0.6, 9), np.linspace(0.4, 0.6, 9)])
    worst = 0.0
    for eta in etas:
        series = compute_moments(float(eta), method="series")
        quadrature = compute_moments(float(eta), method="quadrature")
        worst = max(worst, abs(series.q - quadrature.q) / quadrature.q)
        for k in (2, 4, 6):
            worst = max(worst, abs(series.ratios[k] - quadrature.ratios[k]) / quadrature.ratios[k])
    return worst, int(etas.size), "series vs quadrature on |eta| in [0.4, 0.6]"


@_check("derivative-consistency", 1e-5)
def _derivative_consistency() -> CheckResult:
    worst, samples = 0.0, 0
    for eta in np.linspace(-20.0, 20.0, 9):
        for alpha in DERIVATIVE_ALPHAS:
            for order in (1, 2, 3):
                worst = max(worst, fd_check_B(float(eta), alpha, order))
                samples += 1
    return worst, samples, "closed form vs Richardson differences"


@_check("critical-inclusion", 1e-8)
def _critical_inclusion() -> CheckResult:
    crit = critical_alpha()
    slope = abs(eval_f_prime(crit.eta_min))
    inside = TWENTY_THIRDS < crit.alpha_star < ALPHA_ISOTROPIC_LIMIT and crit.eta_min < 0
    detail = f"alpha* = {crit.alpha_star:.15g}, eta_min = {crit.eta_min:.15g}"
    return (slope if inside else math.inf), 1, detail


@_check("critical-oracle-agreement", 1e-9)
def _critical_oracle_agreement() -> CheckResult:
    crit = critical_alpha()
    _, golden_value = golden_min_f()
    return abs(golden_value - crit.alpha_star), 1, f"golden-section minimum {golden_value:.15g}"


@_check("zero-count-table", 0.0)
def _zero_count_table() -> CheckResult:
    crit = critical_alpha()
    mismatches: List[str] = []
    table = zero_count_table(crit)
    for alpha, count, case in table:
        zero_set = classify(alpha, crit)
        sides = tuple(z.side for z in zero_set.zeros)
        if zero_set.count != count or zero_set.case_label != case or sides != EXPECTED_SIDES[case]:
            mismatches.append(f"alpha={alpha:g}: {zero_set.count} zeros, case {zero_set.case_label}")
            continue
        if alpha == ALPHA_ISOTROPIC_LIMIT:
            # the triple zero at the origin changes sign, so every zero is a sign change
            if sign_scan(alpha, -alpha - 1.0, alpha / 2.0 + 1.0, 100_000) != count:
                mismatches.append(f"alpha={alpha:g}: sign scan disagrees")
        elif not zero_count_oracle_check(alpha, crit):
            mismatches.append(f"alpha={alpha:g}: sign scan disagrees")
    return float(len(mismatches)), len(table), "; ".join(mismatches)


@_check("strict-ordering", 0.0)
def _strict_ordering() -> CheckResult:
    crit = critical_alpha()
    violations: List[str] = []
    for alpha in ORDERING_ALPHAS:
        zero_set = classify(alpha, crit)
        first, second = zero_set.negative[0].eta, zero_set.positive[0].eta
        bars = eta_bar(alpha)
        margins = (
            bars.eta_bar_1 - first,
            -alpha / 2.0 - bars.eta_bar_1,
            second - bars.eta_bar_2,
            bars.eta_bar_2,
        )
        if min(margins) <= ORDERING_MARGIN:
            violations.append(f"alpha={alpha:g}: smallest margin {min(margins):.3e}")
    return float(len(violations)), len(ORDERING_ALPHAS), "; ".join(violations)


@_check("zero-relation", 1e-10)
def _zero_relation() -> CheckResult:
    crit = critical_alpha()
    worst, samples = 0.0, 0
    for alpha, _, _ in zero_count_table(crit):
        for record in classify(alpha, crit).zeros:
            if record.side == "origin":
                continue
            worst = max(worst, zero_relation_residual(record.eta, alpha))
            samples += 1
    return worst, samples, "|r_2 - (alpha - 2 eta) / (3 alpha)| at nonzero zeros"


@_check("factorization", 1e-7)
def _factorization() -> CheckResult:
    crit = critical_alpha()
    worst, samples = 0.0, 0
    for alpha in (7.4, 7.5, 7.6) + ORDERING_ALPHAS:
        for record in classify(alpha, crit).zeros:
            if record.side == "origin":
                continue
            direct = eval_B(record.eta, alpha).b1
            worst = max(worst, abs(direct - b1_factorized(record.eta, alpha)) / max(1.0, abs(direct)))
            if alpha == ALPHA_ISOTROPIC_LIMIT:
                eta = record.eta
                reduced = -(8.0 * eta * eta / (3.0 * alpha * alpha)) * (eta + alpha / 2.0)
                worst = max(worst, abs(direct - reduced) / max(1.0, abs(direct)))
            samples += 1

    bar = eta_bar(crit.alpha_star).eta_bar_1
    worst = max(worst, abs(crit.eta_min - bar))
    tangential = eval_B(crit.eta_min, crit.alpha_star).b2
    worst = max(worst, abs(tangential - b2_at_quadratic_root(bar, crit.alpha_star)))
    samples += 1
    return worst, samples, "b1 against its factored form; eta_min against eta_bar_1(alpha*)"


@_check("alpha-monotonicity", 0.0)
def _alpha_monotonicity() -> CheckResult:
    failures, smallest = 0, math.inf
    for eta in MONOTONICITY_ETAS:
        for alpha in MONOTONICITY_ALPHAS:
            step = eval_B(eta, alpha + BOUNDARY_OFFSET).b - eval_B(eta, alpha).b
            smallest = min(smallest, step)
            failures += step <= 0.0
    samples = len(MONOTONICITY_ETAS) * len(MONOTONICITY_ALPHAS)
    return float(failures), samples, f"smallest increase {smallest:.3e}"


@_check("eta-over-f-bound", 0.0)
def _eta_over_f_bound() -> CheckResult:
    magnitudes = np.logspace(-3.0, 4.0, 60)
    etas = np.concatenate([-magnitudes[::-1], magnitudes])
    failures = 0
    for eta in etas:
        ratio = float(eta) / eval_f(float(eta))
        failures += not -1.0 < ratio < 0.5
    return float(failures), int(etas.size), "eta / f(eta) in (-1, 1/2)"


@_check("positivity-2d", 1e-6)
def _positivity() -> CheckResult:
    worst = 0.0
    for eta in POSITIVITY_ETAS:
        lhs, rhs = positivity_2d(eta)
        worst = max(worst, abs(lhs - rhs) / rhs)
        if eta == 0.0:
            worst = max(worst, abs(rhs - POSITIVITY_AT_ZERO) / POSITIVITY_AT_ZERO)
    return worst, len(POSITIVITY_ETAS), "finite difference of g against the double integral"


@_check("branch-monotonicity", 0.0)
def _branch_monotonicity() -> CheckResult:
    crit = critical_alpha()
    failures: List[str] = []

    inner = sweep(crit.alpha_star + BOUNDARY_OFFSET, ALPHA_ISOTROPIC_LIMIT - BOUNDARY_OFFSET, 50, critical=crit)
    first = [row.eta for row in inner.branch("neg1")]
    second = [row.eta for row in inner.branch("neg2")]
    if len(first) != 50 or np.any(np.diff(first) >= 0):
        failures.append("neg1 is not strictly decreasing on (alpha*, 7.5)")
    if len(second) != 50 or np.any(np.diff(second) <= 0):
        failures.append("neg2 is not strictly increasing on (alpha*, 7.5)")

    outer = sweep(ALPHA_ISOTROPIC_LIMIT + BOUNDARY_OFFSET, 50.0, 50, critical=crit)
    positive = outer.branch("pos")
    if len(positive) != 50 or any(row.eta <= 0 or row.order_parameter >= 0 for row in positive):
        failures.append("pos branch leaves eta > 0, S < 0 on (7.5, 50]")
    return float(len(failures)), 100, "; ".join(failures)


CHECK_NAMES: Tuple[str, ...] = tuple(_REGISTRY)


def run_check(name: str) -> OracleReport:
    """Run one named check; any exception becomes a failed report."""
    if name not in _REGISTRY:
        raise ArgumentError(f"unknown check {name!r}; expected one of {', '.join(CHECK_NAMES)}")
    func, tolerance = _REGISTRY[name]
    try:
        residual, samples, detail = func()
    except Exception as exc:
        logger.exception("check %s raised", name)
        return OracleReport(
            name=name,
            max_residual=math.inf,
            tolerance=tolerance,
            samples=0,
            passed=False,
            detail=f"{type(exc).__name__}: {exc}",
        )
    report = OracleReport.from_residual(name, residual, tolerance, samples, detail)
    logger.debug("check %s: residual %.3e (%s)", name, residual, "pass" if report.passed else "FAIL")
    return report


def run_checks(names: Optional[Iterable[str]] = None) -> List[OracleReport]:
    """
    Run the named checks (all of them by default) in registry order.

    Raises:
        ArgumentError: an unknown check name.
    """
    selected = list(CHECK_NAMES) if names is None else list(dict.fromkeys(names))
    unknown = [n for n in selected if n not in _REGISTRY]
    if unknown:
        raise ArgumentError(f"unknown check(s) {', '.join(unknown)}; expected one of {', '.join(CHECK_NAMES)}")
    selected.sort(key=CHECK_NAMES.index)
    return [run_check(name) for name in selected]


__all__ = [
    "CHECK_NAMES",
    "zero_count_table",
    "run_check",
    "run_checks",
]
