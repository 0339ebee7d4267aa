import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as sp_integrate

from radialiso.quad import (
    GAUSS_WEIGHTS, KRONROD_WEIGHTS, QuadratureError, bracket_root, integrate,
    integrate_power_end, integrate_semi_infinite, integrate_sqrt_singular,
)


def test_rule_weights_sum_to_interval_length():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)


def test_smooth_integrals():
    assert integrate(np.sin, 0, math.pi).value == pytest.approx(2.0, abs=1e-14)
    assert integrate(np.exp, 0, 1).value == pytest.approx(math.e - 1, abs=1e-14)
    assert integrate(lambda t: 1 / (1 + t * t), 0, 1, vectorized=False).value == pytest.approx(math.pi / 4, abs=1e-14)


def test_rejects_bad_interval_and_tolerance():
    with pytest.raises(ValueError):
        integrate(np.cos, 1.0, 0.0)
    with pytest.raises(ValueError):
        integrate(np.cos, 0.0, 1.0, rel_tol=0.0)


def test_sqrt_singular_ends():
    # int_0^1 t^-1/2 dt = 2: smooth part is 1 after removing the left factor
    r = integrate_sqrt_singular(lambda t: np.ones_like(t), 0.0, 1.0, True, False)
    assert r.value == pytest.approx(2.0, abs=1e-13)
    # int_{-1}^1 (1 - t^2)^-1/2 dt = pi
    r = integrate_sqrt_singular(lambda t: np.ones_like(t), -1.0, 1.0, True, True)
    assert r.value == pytest.approx(math.pi, abs=1e-13)


def test_power_end():
    r = integrate_power_end(lambda t: t ** -0.7, 0.0, 1.0, -0.7)
    assert r.value == pytest.approx(1 / 0.3, rel=1e-12)
    with pytest.raises(ValueError):
        integrate_power_end(lambda t: 1 / t, 0.0, 1.0, -1.0)


def test_semi_infinite():
    r = integrate_semi_infinite(lambda t: np.exp(-2 * t) * t, 0.0, 2.0)
    assert r.value == pytest.approx(0.25, rel=1e-10)
    with pytest.raises(ValueError):
        integrate_semi_infinite(np.exp, 0.0, -1.0)


def test_nonconvergence_raises():
    with pytest.raises(QuadratureError):
        integrate(lambda t: np.sin(1 / t) / t, 1e-300, 1.0, rel_tol=1e-15, abs_tol=1e-300, max_evaluations=2000)


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0.1, max_value=20), st.floats(min_value=-3, max_value=3),
       st.floats(min_value=0.01, max_value=5))
def test_matches_scipy(freq, lo, width):
    f = lambda t: np.cos(freq * t) * np.exp(-0.3 * t * t)  # noqa: E731
    ref, _ = sp_integrate.quad(f, lo, lo + width, epsabs=1e-14, epsrel=1e-13, limit=500)
    assert integrate(f, lo, lo + width).value == pytest.approx(ref, abs=1e-11)


@given(st.floats(min_value=-5, max_value=5))
def test_bracket_root_cubic(shift):
    root = bracket_root(lambda x: (x - shift) ** 3 + (x - shift), -10, 10)
    assert root == pytest.approx(shift, abs=1e-12)


def test_bracket_root_errors_and_ends():
    with pytest.raises(ValueError):
        bracket_root(lambda x: x * x + 1, -1, 1)
    assert bracket_root(lambda x: x, 0.0, 1.0) == 0.0
    assert bracket_root(math.cos, 0, 3) == pytest.approx(math.pi / 2, abs=1e-14)
