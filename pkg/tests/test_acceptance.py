"""The eleven acceptance criteria, each at its stated tolerance.

Every test prints one ``CRITERION n: PASS|FAIL`` line; the same lines are
repeated in the pytest terminal summary.
"""

import json
import math
import time

import numpy as np
import pytest

from radialiso.angles import angle_linear, angle_riccati, mu_neg_u, mu_u, mu_w, mu_w0
from radialiso.closedform import (
    BoundaryData, Interval, curvature, reference_w0, solve_linear, solve_linear_origin, solve_riccati,
)
from radialiso.harness import competitor_grid, run
from radialiso.inequalities import hyperbolic_gap, main_gap
from radialiso.params import Weights, classify, sample_P
from radialiso.shapes import (
    CompetitorE, FourierStar, OffCenterBall, ball_ratio, desired_gap, iso_ratio, pushforward_check,
)
from radialiso.special import cap_W, int_w, int_w_rep, small_w

RESULTS: dict[int, str] = {}
TWO_PI = 2 * math.pi


def record(n: int, ok: bool, detail: str) -> None:
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_criterion_01_unweighted_equality():
    start = time.perf_counter()
    a = np.geomspace(1e-2, 1e2, 100)
    t = np.geomspace(1 + 1e-4, 1e4, 100)
    worst = max(abs(main_gap(Weights(0.0, 0.0), float(ai), float(ai * ti))) for ai, ti in zip(a, t))
    elapsed = time.perf_counter() - start
    record(1, worst <= 1e-11 and elapsed < 1.0, f"max |gap| = {worst:.3g}, {elapsed:.3f} s")


def test_criterion_02_main_inequality_positive():
    start = time.perf_counter()
    points = sample_P(30, 30)
    ts = np.geomspace(1 + 1e-4, 1e4, 50)
    worst, where = math.inf, None
    for w in points:
        for t in ts:
            g = main_gap(w, 1.0, float(t))
            if g < worst:
                worst, where = g, (w.alpha, w.beta, float(t))
    elapsed = time.perf_counter() - start
    record(2, worst > 0 and elapsed < 5.0,
           f"{len(points) * len(ts)} cases, worst gap {worst:.3g} at {where}, {elapsed:.2f} s")


def test_criterion_03_hyperbolic_form():
    xs = np.linspace(1.01, 50, 50)
    lams = np.geomspace(1e-4, 50, 50)
    worst = min(hyperbolic_gap(float(x), float(lam)) for x in xs for lam in lams)
    at_one = max(abs(hyperbolic_gap(1.0, float(lam))) for lam in lams)
    record(3, worst > 0 and at_one <= 1e-12, f"min gap {worst:.3g}, max |gap| at x=1 {at_one:.3g}")


def test_criterion_04_beta_function_inequality():
    eq = abs(cap_W(0.5) - TWO_PI)
    xs = np.linspace(0.5, 50, 501)[1:]
    above = min(cap_W(float(x)) - TWO_PI for x in xs)
    ident = max(abs(math.exp(int_w(x)) - cap_W(x) / TWO_PI) for x in (0.6, 1.0, 2.0, 5.0))
    record(4, eq <= 1e-10 and above > 0 and ident <= 1e-8,
           f"|W(1/2)-2pi| = {eq:.3g}, min W-2pi = {above:.3g}, max identity error {ident:.3g}")


def test_criterion_05_w_positivity():
    xs = np.linspace(0.5, 1.0, 102)[1:-1]
    w_min = min(small_w(float(x)) for x in xs)
    checks = [1.0, 1.5, 2.0, 5.0, 10.0]
    int_min = min(int_w(x) for x in checks)
    dual = max(abs(int_w(x) - int_w_rep(x)) for x in checks)
    record(5, w_min > 0 and int_min > 0 and dual <= 1e-8,
           f"min w = {w_min:.3g}, min int w = {int_min:.3g}, dual-route error {dual:.3g}")


def test_criterion_06_reference_angles():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(20):
        a = float(np.exp(rng.uniform(-3, 3)))
        b = a * float(np.exp(rng.uniform(1e-3, 8)))
        worst = max(worst, abs(angle_riccati(reference_w0(a, b)) - math.pi))
    origin = 0.0
    for gamma in (0.5, 0.6, 0.8, 0.95):
        w = Weights(gamma - 1.0 + 0.4, 0.4)
        origin = max(origin, abs(angle_linear(solve_linear_origin(w, 1.3)) - math.pi / (2 * gamma)))
    record(6, worst <= 1e-8 and origin <= 1e-8, f"reference error {worst:.3g}, origin error {origin:.3g}")


def test_criterion_07_integral_inequalities():
    rng = np.random.default_rng(7)
    pool = [w for w in sample_P(8, 6) if not classify(w, 1e-9).in_P_minus]
    ric, lin, dist_u, dist_w = math.inf, math.inf, math.inf, math.inf
    for _ in range(20):
        w = pool[int(rng.integers(len(pool)))]
        a = float(np.exp(rng.uniform(-2, 2)))
        iv = Interval(a, a * float(np.exp(rng.uniform(0.05, 5))))
        rsol = solve_riccati(w, iv)
        sol = solve_linear(w, iv, BoundaryData(-1, 1))
        ric = min(ric, angle_riccati(rsol) - math.pi)
        lin = min(lin, angle_linear(sol))
        for k in range(1, 11):
            t = k / 11
            dist_u = min(dist_u, mu_u(sol, t) - mu_neg_u(sol, t))
            t = 1.0 + k / 11 * (rsol.max_value - 1.0)
            dist_w = min(dist_w, mu_w0(iv.a, iv.b, t) - mu_w(rsol, t))
    record(7, min(ric, lin, dist_u, dist_w) > 0,
           f"min margins: angle-pi {ric:.3g}, linear angle {lin:.3g}, mu_u-mu_-u {dist_u:.3g}, "
           f"mu_w0-mu_w {dist_w:.3g}")


def test_criterion_08_competitor():
    start = time.perf_counter()
    gaps = [iso_ratio(CompetitorE(1.0, w), w) - ball_ratio(w) for w in competitor_grid()]
    specific = abs(desired_gap(Weights(0.1, 0.4)) - (45 / 7 - TWO_PI))
    elapsed = time.perf_counter() - start
    record(8, min(gaps) > 0 and specific <= 1e-10 and elapsed < 1.0,
           f"{len(gaps)} points, min ratio gap {min(gaps):.3g}, value error {specific:.3g}, {elapsed:.3f} s")


def test_criterion_09_shape_sweep(capsys):
    start = time.perf_counter()
    code = run(["verify", "--seed", "0", "--samples", "500", "--json"])
    doc = json.loads(capsys.readouterr().out)
    off = run(["verify", "--alpha", "1", "--beta", "1", "--family", "tangent", "--json"])
    off_doc = json.loads(capsys.readouterr().out)
    elapsed = time.perf_counter() - start
    ok = (code == 0 and doc["cases_run"] == 10000 and doc["worst_gap"] >= -1e-7
          and off == 1 and off_doc["worst_gap"] < 0 and elapsed < 60.0)
    with capsys.disabled():
        record(9, ok, f"worst deficit {doc['worst_gap']:.3g} over {doc['cases_run']} shapes; "
                      f"tangent deficit at (1,1) {off_doc['worst_gap']:.3g} (exit {off}); {elapsed:.1f} s")


def _scaled_residual(values, scale):
    return float(np.max(np.abs(values) / scale))


def test_criterion_10_closed_form_residuals():
    rng = np.random.default_rng(10)
    ode = ric = curv = 0.0
    for w in sample_P(8, 6):
        for _ in range(3):
            a = float(np.exp(rng.uniform(-2, 2)))
            iv = Interval(a, a * float(np.exp(rng.uniform(0.01, 6))))
            taus = np.geomspace(iv.a, iv.b, 21)
            for e1 in (-1, 1):
                for e2 in (-1, 1):
                    sol = solve_linear(w, iv, BoundaryData(e1, e2))
                    # residual relative to the size of the individual terms
                    scale = abs(sol.lam) * taus ** (w.alpha - w.beta) + np.abs(sol.u(taus)) / taus + np.abs(sol.du(taus))
                    ode = max(ode, _scaled_residual(sol.residual(taus), scale))
                    gens = [curvature(sol, float(t))[1] for t in taus]
                    curv = max(curv, max(abs(g + sol.lam) for g in gens) / max(abs(sol.lam), 1.0))
            rsol = solve_riccati(w, iv)
            wv = rsol.w(taus)
            scale = rsol.lam * taus ** (w.alpha - w.beta) * wv**2 + wv / taus + np.abs(rsol.dw(taus))
            ric = max(ric, _scaled_residual(rsol.residual(taus), scale))
    vol = 0.0
    slack = math.inf
    for beta in (-0.8, -0.5, -0.2):
        for shape in (OffCenterBall(0.0, 1.0), OffCenterBall(0.4, 1.0), OffCenterBall(1.0, 1.0),
                      OffCenterBall(3.0, 1.0), FourierStar((0.1, 0.0), 1.0, (0.1, -0.1, 0.05))):
            v, p = pushforward_check(shape, beta)
            vol, slack = max(vol, abs(v)), min(slack, p)
    ok = ode <= 1e-10 and ric <= 1e-10 and curv <= 1e-10 and vol <= 1e-8 and slack >= -1e-8
    record(10, ok, f"linear {ode:.3g}, Riccati {ric:.3g}, curvature {curv:.3g}, "
                   f"pushforward volume {vol:.3g}, perimeter slack {slack:.3g}")


def test_criterion_11_determinism(capsys):
    docs = []
    for _ in range(2):
        assert run(["verify", "--seed", "42", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        doc.pop("timestamp")
        docs.append(json.dumps(doc, sort_keys=True))
    with capsys.disabled():
        record(11, docs[0] == docs[1], "two seeded runs produce identical reports")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
