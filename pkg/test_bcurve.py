"""Tests for B, its derivatives, the quadratic factor and f."""

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from bcurve import (
    TWENTY_THIRDS,
    b1_factorized,
    b2_at_quadratic_root,
    b_via_f,
    eta_bar,
    eval_B,
    eval_B_grid,
    eval_f,
    eval_f_prime,
    f_prime_numerator,
    factor_form,
    g_combination,
    quadratic_factor,
    zero_condition_residual,
)
from exceptions import ArgumentError, ContractError, DomainError, NoRealRoots
from moments import compute_moments


ORIGIN_ALPHAS = [0.1, 1.0, TWENTY_THIRDS, 7.5, 10.0, 100.0]


@pytest.mark.parametrize("alpha", ORIGIN_ALPHAS)
def test_origin_is_a_double_zero(alpha):
    ev = eval_B(0.0, alpha)
    assert abs(ev.b) <= 1e-13
    assert abs(ev.b1) <= 1e-13
    expected = (16.0 / (15.0 * alpha)) * (alpha - 7.5)
    assert ev.b2 == pytest.approx(expected, rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("alpha", [1.0, 7.5, 10.0])
def test_third_derivative_at_origin(alpha):
    assert eval_B(0.0, alpha).b3 == pytest.approx(float(Fraction(-32, 105)), abs=1e-10)


def test_second_derivative_at_origin_for_alpha_ten():
    assert eval_B(0.0, 10.0).b2 == pytest.approx(16.0 / 150.0 * 2.5, rel=1e-12)


def test_f_anchors():
    assert eval_f(0.0) == pytest.approx(7.5, abs=1e-12)
    assert eval_f_prime(0.0) == pytest.approx(float(Fraction(5, 7)), abs=1e-10)
    assert f_prime_numerator(0.0) == pytest.approx(float(Fraction(4, 315)), abs=1e-14)


def test_shared_moments_give_same_result():
    m = compute_moments(-3.0)
    assert eval_B(-3.0, 9.0, moments=m) == eval_B(-3.0, 9.0)
    assert eval_f(-3.0, m) == eval_f(-3.0)


def test_grid_evaluation_matches_pointwise():
    etas = [-40.0, -1.0, 0.0, 0.25, 3.0, 40.0]
    grid = eval_B_grid(etas, 8.0)
    for eta, value in zip(etas, grid):
        assert value == pytest.approx(eval_B(eta, 8.0).b, rel=1e-12, abs=1e-13)


@pytest.mark.parametrize("alpha", [0.0, -1.0, math.inf, math.nan])
def test_bad_alpha_rejected(alpha):
    with pytest.raises(ArgumentError):
        eval_B(1.0, alpha)


def test_eta_bar_at_ten():
    roots = eta_bar(10.0)
    root3 = math.sqrt(3.0)
    assert roots.eta_bar_1 == pytest.approx(-2.5 * (1.0 + root3), rel=1e-14)
    assert roots.eta_bar_2 == pytest.approx(-2.5 * (1.0 - root3), rel=1e-14)
    for eta in (roots.eta_bar_1, roots.eta_bar_2):
        assert abs(quadratic_factor(eta, 10.0)) < 1e-12


def test_eta_bar_at_isotropic_limit():
    roots = eta_bar(7.5)
    assert roots.eta_bar_1 == pytest.approx(-3.75, rel=1e-14)
    assert roots.eta_bar_2 == 0.0
    assert math.copysign(1.0, roots.eta_bar_2) == 1.0


def test_double_root_at_twenty_thirds():
    assert factor_form(TWENTY_THIRDS) == "double"
    roots = eta_bar(TWENTY_THIRDS)
    assert roots.eta_bar_1 == roots.eta_bar_2 == pytest.approx(-5.0 / 3.0)


def test_no_real_roots_below_twenty_thirds():
    assert factor_form(6.0) == "positive-definite"
    with pytest.raises(NoRealRoots) as info:
        eta_bar(6.0)
    assert info.value.offset == pytest.approx(2.25)
    assert isinstance(info.value, DomainError)


def test_b1_factorized_is_pure_formula_when_unchecked():
    second = eta_bar(8.0).eta_bar_2
    assert b1_factorized(second, 8.0, check=False) == pytest.approx(0.0, abs=1e-14)


def test_b1_factorized_rejects_non_zero():
    with pytest.raises(ContractError) as info:
        b1_factorized(1.0, 10.0)
    assert info.value.measured > 1e-8


def test_b2_at_quadratic_root_formula():
    first = eta_bar(8.0).eta_bar_1
    assert b2_at_quadratic_root(first, 8.0) == pytest.approx((4.0 / 24.0) * (first - 1.0), rel=1e-14)


def test_b2_at_quadratic_root_rejects_other_points():
    with pytest.raises(ContractError):
        b2_at_quadratic_root(1.0, 10.0)
    with pytest.raises(DomainError):
        b2_at_quadratic_root(-1.0, 6.0)
    with pytest.raises(ContractError):
        b2_at_quadratic_root(eta_bar(8.0).eta_bar_1, 8.0, require_zero=True)


@pytest.mark.parametrize("eta", [-200.0, -12.0, -1.5, 0.7, 4.0, 90.0])
@pytest.mark.parametrize("alpha", [2.0, 7.5, 30.0])
def test_equivalent_formulation_matches(eta, alpha):
    direct = eval_B(eta, alpha).b
    assert b_via_f(eta, alpha) == pytest.approx(direct, rel=1e-9, abs=1e-11 * (1.0 + eta * eta))


@settings(max_examples=40, deadline=None)
@given(
    st.floats(min_value=-30.0, max_value=30.0, allow_nan=False),
    st.sampled_from([1.0, 5.0, 7.5, 10.0]),
)
def test_b_increases_with_alpha(eta, alpha):
    assume(abs(eta) >= 0.1)
    assert eval_B(eta, alpha + 1e-3).b > eval_B(eta, alpha).b


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-1e3, max_value=1e3, allow_nan=False))
def test_eta_over_f_is_bounded(eta):
    assume(eta != 0.0)
    assert -1.0 < eta / eval_f(eta) < 0.5


@pytest.mark.parametrize("eta", [1e-2, 5e-3, 1e-3, -1e-3, -5e-3, -1e-2])
def test_sign_near_origin_at_isotropic_limit(eta):
    assert eta * eval_B(eta, 7.5).b < 0.0


@pytest.mark.parametrize("magnitude", [1e2, 1e3, 1e4])
def test_f_grows_without_bound(magnitude):
    assert eval_f(magnitude) > 2.0 * magnitude
    assert eval_f(-magnitude) > magnitude


def test_g_combination_increases():
    values = [g_combination(eta) for eta in (-10.0, -1.0, 0.0, 1.0, 10.0)]
    assert values == sorted(values)
    assert len(set(values)) == len(values)
    assert values[2] == pytest.approx(float(Fraction(4, 315)), rel=1e-12)


def test_zero_condition_residual_vanishes_at_origin():
    assert zero_condition_residual(0.0, 3.0) == 0.0


@pytest.mark.parametrize("eta", [-30.0, 30.0])
def test_b_negative_far_from_origin(eta):
    assert eval_B(eta, 10.0).b < 0.0


def test_b2_at_first_root_of_isotropic_limit():
    first = eta_bar(7.5).eta_bar_1
    assert b2_at_quadratic_root(first, 7.5) == pytest.approx(-2.0 / 3.0, rel=1e-14)


def test_b2_at_second_root_closed_form():
    alpha = 9.0
    second = eta_bar(alpha).eta_bar_2
    closed = math.sqrt((3.0 * alpha - 20.0) / (3.0 * alpha)) * (
        1.0 - math.sqrt(3.0 * (3.0 * alpha - 20.0) / alpha)
    )
    value = b2_at_quadratic_root(second, alpha)
    assert value == pytest.approx(closed, rel=1e-13)
    assert value < 0.0
