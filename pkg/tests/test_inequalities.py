import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from radialiso.inequalities import (
    GapRecord, bigLambda, bigM, coth_gap_normalized, curve_excess, default_t_grid,
    equivalence_check, gap_sweep, holder_ratio, hyperbolic_gap, identity_lambda_main,
    main_gap, main_lhs, mhat_gap, pminus_lhs, young_expression,
)
from radialiso.params import Weights, pplus_on_line, sample_P

# 50-digit evaluations of the defining expressions
MAIN_GAP_ORACLE = [
    ((0.1, 0.5), 2.0, 0.70954602681885596393),
    ((0.1, 0.5), 1.0001, 4444.6666729631372406),
    ((0.1, 0.5), 100.0, 0.3629418304021247821),
    ((-1.0, -0.5), 3.0, 10.928203230275509174),
    ((0.5, 1.0), 5.0, 0.35606998093471262647),
    ((-0.5, 0.3), 1.5, 28.287322026148569096),
    ((0.0, 0.2), 1000.0, 0.085676455696886863132),
]
MHAT_ORACLE = [
    ((0.1, 0.5), 2.0, 3.3713114230241447868),
    ((0.5, 1.0), 10.0, 1.0488930630233489625),
    ((-0.5, 0.3), 1.01, 1104.3888745991346445),
]
HYPERBOLIC_ORACLE = [
    (2.0, 0.5, 0.0091271618951224532523),
    (2.0, 5.0, 0.5115651228853283024),
    (1.5, 1e-3, 2.089762908158846028e-11),
    (10.0, 0.01, 0.00001374385990021608644),
    (3.0, 40.0, 1.3333336932443145074),
]


@pytest.mark.parametrize("ab, t, expected", MAIN_GAP_ORACLE)
def test_main_gap_oracle(ab, t, expected):
    assert main_gap(Weights(*ab), 1.0, t) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("ab, t, expected", MHAT_ORACLE)
def test_mhat_gap_oracle(ab, t, expected):
    assert mhat_gap(Weights(*ab), 1.0, t) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("x, lam, expected", HYPERBOLIC_ORACLE)
def test_hyperbolic_gap_oracle(x, lam, expected):
    assert hyperbolic_gap(x, lam) == pytest.approx(expected, rel=1e-8)


def test_main_gap_scales_with_interval():
    w = Weights(0.1, 0.5)
    assert main_gap(w, 3.0, 6.0) == pytest.approx(main_gap(w, 1.0, 2.0), rel=1e-14)


def test_unweighted_equality():
    for t in default_t_grid(40):
        assert abs(main_gap(Weights(0.0, 0.0), 1.0, float(t))) <= 1e-11


def test_series_branch_is_continuous():
    # both sides of the series switchover for a point with max(|p|,|q|,|gamma|) = 2.1
    w = Weights(0.1, 0.5)
    L0 = 0.05 / 2.1
    below = coth_gap_normalized(w, math.exp(L0 * (1 - 1e-9)))
    above = coth_gap_normalized(w, math.exp(L0 * (1 + 1e-9)))
    assert below == pytest.approx(above, rel=1e-8)


def test_region_checks():
    with pytest.raises(ValueError):
        main_gap(Weights(1.0, 1.0), 1.0, 2.0)
    assert math.isfinite(main_gap(Weights(1.0, 1.0), 1.0, 2.0, force=True))
    with pytest.raises(ValueError):
        mhat_gap(Weights(-1.0, -0.5), 1.0, 2.0)
    with pytest.raises(ValueError):
        main_gap(Weights(0.1, 0.5), 2.0, 1.0)
    with pytest.raises(ValueError):
        coth_gap_normalized(Weights(2.0, 3.0), 2.0)


def test_curve_excess_exact():
    assert curve_excess(Weights(0.0, 0.0)) == 0.0
    assert curve_excess(Weights(0.1, 0.5)) == pytest.approx(0.25 - 0.15, abs=1e-16)


def test_main_lhs_on_alpha_2beta():
    for beta in (-0.9, -0.5, -0.1):
        for t in (1.5, 4.0, 100.0):
            assert main_lhs(Weights(2 * beta, beta), t) == pytest.approx(pminus_lhs(beta, t), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sample_P(15, 12)), st.floats(min_value=1e-4, max_value=9.2))
def test_main_gap_positive_off_origin(w, logt):
    assert main_gap(w, 1.0, math.exp(logt)) > 0


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1.01, max_value=50), st.floats(min_value=1e-4, max_value=50))
def test_hyperbolic_gap_positive(x, lam):
    assert hyperbolic_gap(x, lam) > 0


def test_hyperbolic_gap_symmetric_and_zero_at_one():
    for lam in (1e-3, 0.3, 2.0, 30.0):
        assert abs(hyperbolic_gap(1.0, lam)) <= 1e-12
        assert hyperbolic_gap(2.5, lam) == pytest.approx(hyperbolic_gap(0.4, lam), rel=1e-10)


def test_hyperbolic_small_lambda_vanishes():
    # leading behaviour lam^3 y (x - 1/x)^2 / 72
    x, lam = 3.0, 1e-5
    y = x + 1 / x
    assert hyperbolic_gap(x, lam) == pytest.approx(lam**3 * y * (x - 1 / x) ** 2 / 72, rel=1e-6)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=1.01, max_value=30), st.floats(min_value=0.01, max_value=6))
def test_equivalence_on_boundary_curve(zeta, logt):
    w = pplus_on_line(zeta)
    direct, hyper = equivalence_check(w, math.exp(logt))
    assert direct > -1e-12 and hyper > 0


def test_equivalence_rejects_off_curve():
    with pytest.raises(ValueError):
        equivalence_check(Weights(0.1, 0.5), 2.0)
    with pytest.raises(ValueError):
        equivalence_check(Weights(0.0, 0.0), 2.0)


def test_bigM_and_bigLambda_values():
    assert bigM(3.0, 1.0) == pytest.approx(0.5, rel=1e-15)
    assert bigM(1.0, 2.0) == 1.0
    assert bigLambda(3.0, 1.0) == pytest.approx(4.0, rel=1e-13)
    assert bigLambda(2.0, 1.0) == pytest.approx(6.0, rel=1e-13)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(sample_P(10, 8)), st.floats(min_value=0.01, max_value=6))
def test_identity_lambda_main(w, logt):
    assert identity_lambda_main(w, math.exp(logt)) <= 1e-9 * (1 + abs(bigLambda(math.exp(logt * w.gamma),
                                                                                 (w.beta + 1) / w.gamma)))


@given(st.floats(min_value=1.0001, max_value=50), st.floats(min_value=0.05, max_value=10))
def test_young_and_holder(tau, zeta):
    assert young_expression(tau, zeta) > 0
    assert holder_ratio(tau, 2.0, 1.0) > holder_ratio(tau * 1.5, 2.0, 1.0)


def test_gap_sweep_records():
    recs = gap_sweep("main", Weights(0.1, 0.5), ts=[2.0, 3.0])
    assert [r.b for r in recs] == [2.0, 3.0]
    assert all(r.gap > 0 and r.kind == "main" for r in recs)
    assert all(r.gap > 0 for r in gap_sweep("lambda_mono", Weights(0.1, 0.5), ts=[2.0, 10.0]))
    with pytest.raises(ValueError):
        gap_sweep("nope", Weights(0.1, 0.5), ts=[2.0])
    with pytest.raises(ArithmeticError):
        GapRecord(Weights(0, 0), 1.0, 2.0, float("nan"), "main")


def test_default_grid():
    g = default_t_grid(200)
    assert len(g) == 200 and g[0] == pytest.approx(1 + 1e-4) and g[-1] == pytest.approx(1e4)
    assert np.all(np.diff(g) > 0)


@given(st.floats(min_value=1.0, max_value=1e3), st.floats(min_value=0.05, max_value=20))
def test_bigM_strictly_decreasing(tau, zeta):
    assert bigM(tau * 1.01 + 1e-3, zeta) < bigM(tau, zeta) <= 1.0
