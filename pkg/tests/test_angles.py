import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from radialiso.angles import (
    angle_linear, angle_riccati, central_difference, endpoint_coth_gap, mu_measure, mu_neg_u,
    mu_u, mu_w, mu_w0, neg_dmu_u, omega_field, w0_preimages, z0,
)
from radialiso.closedform import (
    BoundaryData, Interval, reference_w0, solve_linear, solve_linear_origin, solve_riccati, w0_explicit,
)
from radialiso.inequalities import main_gap
from radialiso.params import Weights

INCREASING = BoundaryData(-1, 1)
# 50-digit tanh-sinh quadrature of the defining integrals
ANGLE_ORACLE = [
    ((0.1, 0.5), 1.0, 3.0, 3.3434184929788755264, 0.36289127317252651),
    ((-0.5, 0.3), 0.5, 4.0, 6.464562522777079974, 1.6311257943796926506),
    ((0.5, 1.0), 2.0, 2.5, 3.1452467581094020345, 0.029154421069647490742),
]
OFF_MINUS = [Weights(0.1, 0.5), Weights(0.1, 0.4), Weights(-0.5, 0.3), Weights(0.5, 1.0), Weights(0.0, 0.2)]

intervals = st.tuples(st.floats(min_value=0.05, max_value=20), st.floats(min_value=1.05, max_value=40)).map(
    lambda ab: Interval(ab[0], ab[0] * ab[1]))


@pytest.mark.parametrize("ab, a, b, ric, lin", ANGLE_ORACLE)
def test_angle_oracle(ab, a, b, ric, lin):
    w, iv = Weights(*ab), Interval(a, b)
    assert angle_riccati(solve_riccati(w, iv)) == pytest.approx(ric, rel=1e-9)
    assert angle_linear(solve_linear(w, iv, INCREASING)) == pytest.approx(lin, rel=1e-9)


@settings(max_examples=15, deadline=None)
@given(intervals)
def test_reference_angle_is_pi(iv):
    assert angle_riccati(reference_w0(iv.a, iv.b)) == pytest.approx(math.pi, abs=1e-8)


@pytest.mark.parametrize("gamma", [0.5, 0.6, 0.8, 0.95])
def test_origin_angle(gamma):
    w = Weights(gamma - 1.0 + 0.3, 0.3)
    assert angle_linear(solve_linear_origin(w, 1.7)) == pytest.approx(math.pi / (2 * gamma), abs=1e-8)


def test_linear_angle_vanishes_on_alpha_2beta():
    # tau -> ab/tau maps the increasing solution to minus itself there
    for beta in (-0.5, 0.0):
        sol = solve_linear(Weights(2 * beta, beta), Interval(1.0, 3.0), INCREASING)
        assert abs(angle_linear(sol)) <= 1e-9


@settings(max_examples=15, deadline=None)
@given(intervals, st.sampled_from(OFF_MINUS))
def test_angle_inequalities(iv, w):
    assert angle_riccati(solve_riccati(w, iv)) > math.pi
    assert angle_linear(solve_linear(w, iv, INCREASING)) > 0


@settings(max_examples=15, deadline=None)
@given(intervals, st.sampled_from(OFF_MINUS), st.floats(min_value=0.02, max_value=0.98))
def test_distribution_comparisons(iv, w, frac):
    sol = solve_linear(w, iv, INCREASING)
    assert mu_u(sol, frac) > mu_neg_u(sol, frac)
    rsol = solve_riccati(w, iv)
    t = 1.0 + frac * (rsol.max_value - 1.0)
    assert mu_w(rsol, t) < mu_w0(iv.a, iv.b, t)


def test_mu_w_ends():
    rsol = solve_riccati(Weights(0.1, 0.5), Interval(1.0, 4.0))
    assert mu_w(rsol, 1.0) == pytest.approx(mu_measure(1.0, 4.0))
    assert mu_w(rsol, rsol.max_value) == 0.0
    with pytest.raises(ValueError):
        mu_w(rsol, 0.5)


def test_mu_u_needs_increasing_data():
    sol = solve_linear(Weights(0.1, 0.5), Interval(1.0, 2.0), BoundaryData(1, 1))
    with pytest.raises(ValueError):
        mu_u(sol, 0.5)
    with pytest.raises(ValueError):
        mu_u(solve_linear(Weights(0.1, 0.5), Interval(1.0, 2.0), INCREASING), 1.5)


@given(intervals, st.floats(min_value=0.01, max_value=0.99))
def test_w0_level_sets(iv, frac):
    lam = 0.5 * (iv.a + iv.b) / math.sqrt(iv.a * iv.b)
    t = 1.0 + frac * (lam - 1.0)
    lo, hi = w0_preimages(iv.a, iv.b, t)
    assert float(w0_explicit(iv.a, iv.b, lo)) == pytest.approx(t, rel=1e-10)
    assert float(w0_explicit(iv.a, iv.b, hi)) == pytest.approx(t, rel=1e-10)
    assert z0(iv.a, iv.b, t) == pytest.approx(math.log(hi / lo), rel=1e-9, abs=1e-12)
    assert mu_w(reference_w0(iv.a, iv.b), t) == pytest.approx(math.log(hi / lo), rel=1e-8, abs=1e-10)


def test_neg_dmu_u_matches_finite_difference():
    sol = solve_linear(Weights(0.1, 0.5), Interval(1.0, 3.0), INCREASING)
    for t in (0.2, 0.5, 0.8):
        fd = -central_difference(lambda v: mu_u(sol, v), t, 1e-5)
        assert neg_dmu_u(sol, t) == pytest.approx(fd, rel=1e-7)


def test_omega_and_coth_gap():
    assert omega_field(2.0, 2 * math.log(2.0)) == pytest.approx(-5.0 / 3.0, rel=1e-14)
    w = Weights(0.1, 0.5)
    assert endpoint_coth_gap(w, 2.0, 5.0) == pytest.approx(main_gap(w, 2.0, 5.0), rel=1e-14)
    with pytest.raises(ValueError):
        omega_field(-1.0, 1.0)


def test_linear_angle_symmetric_in_data():
    w, iv = Weights(0.1, 0.5), Interval(1.0, 3.0)
    up = angle_linear(solve_linear(w, iv, BoundaryData(1, 1)))
    down = angle_linear(solve_linear(w, iv, BoundaryData(-1, -1)))
    assert up == pytest.approx(-down, rel=1e-10)
    assert np.isfinite(up)


@pytest.mark.parametrize("a, b", [(1.0, 3.0), (0.2, 9.0), (2.0, 2.5)])
def test_z0_solves_reference_ode(a, b):
    top = 0.5 * (a + b) / math.sqrt(a * b)
    for frac in (0.1, 0.5, 0.9):
        t = 1.0 + frac * (top - 1.0)
        h = 1e-6 * (top - 1.0)
        slope = central_difference(lambda v: z0(a, b, v), t, h)
        assert slope == pytest.approx(omega_field(t, z0(a, b, t)), rel=1e-8)
