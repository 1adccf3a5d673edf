"""Tests for the brute-force reference computations."""

from fractions import Fraction

import pytest

from exceptions import ArgumentError, DomainError
from moments import compute_moments
from oracle import (
    POSITIVITY_AT_ZERO,
    fd_check_B,
    golden_min_f,
    positivity_2d,
    quad_moment,
    richardson_derivative,
    sign_scan,
)


def test_quad_moment_at_origin():
    assert quad_moment(0.0, 4) == pytest.approx(0.2, rel=1e-13)


@pytest.mark.parametrize("eta", [-300.0, -20.0, -1.0, 1.0, 20.0, 300.0])
@pytest.mark.parametrize("k", [0, 2, 6])
def test_quad_moment_matches_main_path(eta, k):
    assert quad_moment(eta, k) == pytest.approx(compute_moments(eta).scaled[k], rel=1e-12)


def test_quad_moment_keeps_scaling_for_negative_eta():
    assert 0.0 < quad_moment(-100.0, 2) < 1.0


def test_quad_moment_limits():
    with pytest.raises(DomainError):
        quad_moment(600.0, 0)
    with pytest.raises(ArgumentError):
        quad_moment(1.0, -2)


@pytest.mark.parametrize(
    "alpha, lo, hi, n, changes",
    [(10.0, -11.0, 6.0, 200_000, 2), (2.0, -3.0, 2.0, 100_000, 0), (7.5, -8.0, 4.0, 100_000, 2)],
)
def test_sign_scan_examples(alpha, lo, hi, n, changes):
    assert sign_scan(alpha, lo, hi, n) == changes


def test_sign_scan_arguments():
    with pytest.raises(ArgumentError):
        sign_scan(10.0, 1.0, -1.0, 10_000)
    with pytest.raises(ArgumentError):
        sign_scan(10.0, -1.0, 1.0, 999)


def test_golden_section_agrees_with_bisection(critical):
    eta, value = golden_min_f()
    assert eta < 0.0
    assert value < 7.5
    assert value == pytest.approx(critical.alpha_star, abs=1e-9)
    assert eta == pytest.approx(critical.eta_min, abs=1e-5)


def test_positivity_at_origin_is_exact():
    lhs, rhs = positivity_2d(0.0)
    assert POSITIVITY_AT_ZERO == float(Fraction(4, 525))
    assert rhs == pytest.approx(POSITIVITY_AT_ZERO, rel=1e-10)
    assert lhs == pytest.approx(rhs, rel=1e-6)


@pytest.mark.parametrize("eta", [-5.0, 5.0])
def test_positivity_away_from_origin(eta):
    lhs, rhs = positivity_2d(eta)
    assert rhs > 0.0
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_positivity_range():
    with pytest.raises(DomainError):
        positivity_2d(60.0)


@pytest.mark.parametrize("eta, alpha, order, bound", [(0.0, 7.5, 3, 1e-5), (0.0, 10.0, 2, 1e-6), (3.0, 5.0, 1, 1e-5)])
def test_closed_form_derivatives_match_differences(eta, alpha, order, bound):
    assert fd_check_B(eta, alpha, order) < bound


def test_fd_check_rejects_order():
    with pytest.raises(ArgumentError):
        fd_check_B(0.0, 1.0, 4)


def test_richardson_is_exact_on_cubics():
    assert richardson_derivative(lambda x: x**3 - 2.0 * x, 1.5, 0.1) == pytest.approx(3.0 * 1.5**2 - 2.0, rel=1e-12)


def test_moments_at_minus_three_match_quadrature():
    moments = compute_moments(-3.0, kmax=6)
    a0 = quad_moment(-3.0, 0)
    assert moments.ratios[2] == pytest.approx(quad_moment(-3.0, 2) / a0, rel=1e-13)
    # q = exp(-eta) / A_0 is the reciprocal of the scaled A_0 for eta < 0
    assert moments.q == pytest.approx(1.0 / a0, rel=1e-13)
