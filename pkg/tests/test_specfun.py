import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from casimirbox.specfun import (
    CONSTANTS,
    HBAR_C,
    K_BOLTZMANN,
    PI,
    ZETA3,
    bessel_k,
    exp_tail_bound,
)

# pinned by the quadrature oracle (see data/fixtures.txt)
K1_AT_1 = 0.60190723019723458


def test_constants_pinned():
    assert abs(ZETA3 - 1.2020569031595942854) < 1e-15
    assert CONSTANTS.zeta3 == ZETA3
    assert CONSTANTS.pi == math.pi
    # CODATA hbar*c and the exact-SI Boltzmann constant
    assert abs(HBAR_C - 3.16152677e-26) < 1e-33
    assert K_BOLTZMANN == 1.380649e-23


def test_k_half_closed_form():
    # K_{1/2}(2) = sqrt(pi/4) e^{-2}
    assert bessel_k(0.5, 2.0) == pytest.approx(math.sqrt(PI / 4.0) * math.exp(-2.0), rel=1e-14)


def test_k_three_halves_closed_form():
    # K_{3/2}(1) = sqrt(pi/2) e^{-1} (1 + 1) = 0.9221370...
    expected = math.sqrt(PI / 2.0) * math.exp(-1.0) * 2.0
    assert bessel_k(1.5, 1.0) == pytest.approx(expected, rel=1e-14)
    assert expected == pytest.approx(0.92213698, abs=1e-7)


def test_k1_against_pinned_oracle_value():
    assert bessel_k(1.0, 1.0) == pytest.approx(K1_AT_1, rel=1e-12)


def test_recurrence_between_half_integer_orders():
    # K_{3/2}(x) = K_{1/2}(x) (1 + 1/x), exact at these orders
    for x in np.linspace(0.01, 50.0, 37):
        lhs = bessel_k(1.5, x)
        rhs = bessel_k(0.5, x) * (1.0 + 1.0 / x)
        assert abs(lhs - rhs) <= 1e-13 * abs(rhs)


@pytest.mark.parametrize("order", [0.5, 1.0, 1.5])
def test_strictly_decreasing(order):
    xs = np.geomspace(1e-3, 500.0, 200)
    vals = bessel_k(order, xs)
    assert np.all(np.diff(vals) < 0.0)


@pytest.mark.parametrize("order", [0.5, 1.0, 1.5])
def test_underflow_returns_zero(order):
    assert bessel_k(order, 800.0) == 0.0


def test_array_and_scalar_agree():
    xs = np.array([0.5, 2.0, 10.0])
    arr = bessel_k(1.0, xs)
    for x, v in zip(xs, arr):
        assert bessel_k(1.0, float(x)) == v


def test_domain_errors():
    with pytest.raises(ValueError):
        bessel_k(1.0, 0.0)
    with pytest.raises(ValueError):
        bessel_k(1.0, -3.0)
    with pytest.raises(ValueError):
        bessel_k(2.0, 1.0)


def test_tail_bound_examples():
    assert exp_tail_bound(1.0, 1.0, 10) == pytest.approx(
        math.exp(-10.0) / (1.0 - math.exp(-1.0)), rel=1e-15
    )
    assert exp_tail_bound(1.0, 1.0, 10) == pytest.approx(7.1825e-5, rel=1e-4)
    assert exp_tail_bound(2.0, 0.5, 0) == pytest.approx(5.0830, rel=1e-4)


@settings(max_examples=60, deadline=None)
@given(
    prefactor=st.floats(min_value=1e-6, max_value=1e6),
    rate=st.floats(min_value=1e-3, max_value=30.0),
    start=st.integers(min_value=0, max_value=50),
)
def test_tail_bound_dominates_partial_sums(prefactor, rate, start):
    n = np.arange(start, start + 10_000)
    partial = float(np.sum(prefactor * np.exp(-rate * n)))
    # the full geometric sum equals the bound, so allow rounding slack
    assert exp_tail_bound(prefactor, rate, start) >= partial * (1.0 - 1e-12)


def test_tail_bound_domain_errors():
    with pytest.raises(ValueError):
        exp_tail_bound(1.0, 0.0, 1)
    with pytest.raises(ValueError):
        exp_tail_bound(1.0, -1.0, 1)
    with pytest.raises(ValueError):
        exp_tail_bound(-1.0, 1.0, 1)
