import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from trendhedge.rates import RatePath, growth_factor, target_value

DT = 1 / 252


def test_k0_is_one():
    path = RatePath(np.array([0.3, -0.1, 0.2]), DT)
    assert growth_factor(path, 0) == 1.0


def test_constant_rate_one_year():
    path = RatePath.constant(0.05, 253, DT)
    assert growth_factor(path, 252) == pytest.approx(math.exp(0.05), rel=1e-13)
    assert growth_factor(path, 252) == pytest.approx(1.051271, abs=1e-6)


def test_piecewise_against_quadrature():
    rates = np.r_[np.full(100, 0.02), np.full(100, 0.06)]
    path = RatePath(rates, DT)

    def r_of_t(t):
        return 0.02 if t < 100 * DT else 0.06

    integral, _ = quad(r_of_t, 0.0, 150 * DT, points=[100 * DT], epsabs=1e-15, epsrel=1e-14)
    assert growth_factor(path, 150) == pytest.approx(math.exp(integral), rel=1e-12)
    assert growth_factor(path, 150) == pytest.approx(
        math.exp(0.02 * 100 * DT + 0.06 * 50 * DT), rel=1e-12)


def test_target_value():
    assert target_value(RatePath.constant(0.05, 10), 0.0, 7) == 0.0
    zero = RatePath.constant(0.0, 30)
    assert all(target_value(zero, -40.0, k) == -40.0 for k in range(30))
    path = RatePath.constant(0.05, 253, DT)
    assert target_value(path, 100.0, 252) == pytest.approx(105.1271, abs=1e-4)


def test_index_errors():
    path = RatePath.constant(0.01, 5)
    with pytest.raises(IndexError):
        growth_factor(path, 5)
    with pytest.raises(IndexError):
        growth_factor(path, -1)


def test_invariants():
    with pytest.raises(ValueError):
        RatePath(np.array([]))
    with pytest.raises(ValueError):
        RatePath(np.array([0.01, np.nan]))
    with pytest.raises(ValueError):
        RatePath(np.array([0.01]), dt_years=0.0)


def test_zero_rate_growth_is_one():
    assert np.all(RatePath.constant(0.0, 50).growth() == 1.0)


@settings(max_examples=80, deadline=None)
@given(rates=st.lists(st.floats(-0.5, 0.5), min_size=2, max_size=60), data=st.data())
def test_multiplicativity_and_positivity(rates, data):
    path = RatePath(np.array(rates), DT)
    n = len(rates)
    k1 = data.draw(st.integers(0, n - 1))
    k2 = data.draw(st.integers(k1, n - 1))
    g1, g2 = growth_factor(path, k1), growth_factor(path, k2)
    step = math.exp(sum(r * DT for r in rates[k1:k2]))
    assert g2 == pytest.approx(g1 * step, rel=1e-12)
    assert g1 > 0 and g2 > 0
