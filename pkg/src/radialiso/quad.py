"""Adaptive Gauss-Kronrod quadrature and bracketing root finding.

Integrands are called with a numpy array of nodes unless ``vectorized=False``
is passed, in which case they are called once per node with a float.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-12
MAX_DEPTH = 60
MAX_EVALUATIONS = 1_000_000

# 15-point Kronrod rule and its embedded 7-point Gauss rule on [-1, 1].
_XK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1:7:2] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[13:8:-2] = _WG[:3]


class QuadratureError(ArithmeticError):
    """Raised when the adaptive integrator cannot meet its tolerance."""


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    evaluations: int


def _rule(f, lo, hi, vectorized):
    half = 0.5 * (hi - lo)
    x = 0.5 * (lo + hi) + half * NODES
    if vectorized:
        y = np.asarray(f(x), dtype=float)
        if y.shape != x.shape:
            y = np.broadcast_to(y, x.shape)
    else:
        y = np.array([f(float(t)) for t in x], dtype=float)
    if not np.all(np.isfinite(y)):
        raise QuadratureError(f"non-finite integrand value on [{lo}, {hi}]")
    k = half * float(KRONROD_WEIGHTS @ y)
    g = half * float(GAUSS_WEIGHTS @ y)
    return k, abs(k - g)


def integrate(
    f: Callable,
    a: float,
    b: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    max_evaluations: int = MAX_EVALUATIONS,
    vectorized: bool = True,
) -> QuadResult:
    """Globally adaptive G7/K15 quadrature of ``f`` over [a, b].

    The interval with the largest error estimate is bisected until the summed
    estimate falls below max(abs_tol, rel_tol * |value|). The error estimate of
    each panel is |K15 - G7|, which is conservative for smooth integrands.

    Raises:
        QuadratureError: if the evaluation budget or the depth cap is exhausted.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if rel_tol <= 0 or abs_tol <= 0:
        raise ValueError("tolerances must be positive")
    k, e = _rule(f, a, b, vectorized)
    evals = 15
    heap = [(-e, a, b, k, 0)]
    total, err = k, e
    while err > max(abs_tol, rel_tol * abs(total)):
        if evals + 30 > max_evaluations:
            raise QuadratureError(f"evaluation budget exhausted (err {err:.3g})")
        neg_e, lo, hi, k_old, depth = heapq.heappop(heap)
        if depth >= MAX_DEPTH:
            raise QuadratureError(f"subdivision depth cap reached near {lo}")
        mid = 0.5 * (lo + hi)
        k1, e1 = _rule(f, lo, mid, vectorized)
        k2, e2 = _rule(f, mid, hi, vectorized)
        evals += 30
        heapq.heappush(heap, (-e1, lo, mid, k1, depth + 1))
        heapq.heappush(heap, (-e2, mid, hi, k2, depth + 1))
        total += k1 + k2 - k_old
        err += e1 + e2 + neg_e
        if err <= max(abs_tol, rel_tol * abs(total)) or len(heap) % 64 == 0:
            # resum to remove drift from the running updates
            total = math.fsum(item[3] for item in heap)
            err = math.fsum(-item[0] for item in heap)
    return QuadResult(total, err, evals)


def integrate_sqrt_singular(
    f_smooth: Callable,
    a: float,
    b: float,
    sing_left: bool,
    sing_right: bool,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    vectorized: bool = True,
) -> QuadResult:
    """Integrate f_smooth(t) (t-a)^(-1/2 if sing_left) (b-t)^(-1/2 if sing_right).

    Each singular end is removed with t = end +- h s^2 on its own half of the
    interval, which turns the inverse square root into a bounded factor.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if vectorized:
        call = f_smooth
    else:
        def call(t):
            return np.array([f_smooth(float(v)) for v in np.atleast_1d(t)])

    def weight(t):
        out = np.ones_like(t)
        if sing_left:
            out = out / np.sqrt(t - a)
        if sing_right:
            out = out / np.sqrt(b - t)
        return out

    if not (sing_left or sing_right):
        return integrate(lambda t: call(t) * weight(t), a, b, rel_tol, abs_tol)

    mid = 0.5 * (a + b)
    pieces = []
    if sing_left:
        h = mid - a

        def left(s):
            t = a + h * s * s
            rest = 1.0 / np.sqrt(b - t) if sing_right else 1.0
            # (t - a)^(-1/2) dt = 2 sqrt(h) ds
            return call(t) * rest * 2.0 * math.sqrt(h)

        pieces.append(integrate(left, 0.0, 1.0, rel_tol, abs_tol))
    else:
        pieces.append(integrate(lambda t: call(t) * weight(t), a, mid, rel_tol, abs_tol))
    if sing_right:
        h = b - mid

        def right(s):
            t = b - h * s * s
            rest = 1.0 / np.sqrt(t - a) if sing_left else 1.0
            return call(t) * rest * 2.0 * math.sqrt(h)

        pieces.append(integrate(right, 0.0, 1.0, rel_tol, abs_tol))
    else:
        pieces.append(integrate(lambda t: call(t) * weight(t), mid, b, rel_tol, abs_tol))
    return QuadResult(
        sum(p.value for p in pieces),
        sum(p.err_estimate for p in pieces),
        sum(p.evaluations for p in pieces),
    )


def integrate_power_end(
    f: Callable,
    a: float,
    b: float,
    exponent: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> QuadResult:
    """Integrate f over [a, b] when f(t) behaves like (t - a)^exponent near a.

    Uses t = a + (b - a) s^k with k chosen so that the transformed integrand
    vanishes at s = 0 like s^1 or faster.
    """
    if exponent <= -1:
        raise ValueError("endpoint singularity is not integrable")
    k = max(1.0, 2.0 / (exponent + 1.0))
    h = b - a

    def g(s):
        return f(a + h * s**k) * (h * k * s ** (k - 1.0))

    return integrate(g, 0.0, 1.0, rel_tol, abs_tol)


def integrate_semi_infinite(
    f: Callable,
    a: float,
    decay_rate: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> QuadResult:
    """Integrate f over [a, inf) for f decaying like exp(-decay_rate t).

    Maps t = a - log(s)/decay_rate onto s in (0, 1], which turns the
    exponential factor into a constant times s and cancels the Jacobian.
    """
    if decay_rate <= 0:
        raise ValueError("decay_rate must be positive")

    def g(s):
        t = a - np.log(s) / decay_rate
        return f(t) / (decay_rate * s)

    return integrate(g, 0.0, 1.0, rel_tol, abs_tol)


def bracket_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-14) -> float:
    """Brent's method: inverse quadratic / secant steps safeguarded by bisection.

    Returns a point of the final bracket, whose width is at most ``tol``
    (plus a few ulps of the root). ``f`` is called with floats.

    Raises:
        ValueError: if f(lo) and f(hi) have the same strict sign.
    """
    if not lo <= hi:
        raise ValueError("need lo <= hi")
    fa, fb = f(lo), f(hi)
    if fa == 0.0:
        return lo
    if fb == 0.0:
        return hi
    if fa * fb > 0:
        raise ValueError(f"root not bracketed: f({lo})={fa}, f({hi})={fb}")
    a, b = lo, hi
    c, fc = a, fa
    d = e = b - a
    eps = np.finfo(float).eps
    for _ in range(500):
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * eps * abs(b) + 0.5 * tol
        m = 0.5 * (c - b)
        if abs(m) <= tol1 or fb == 0.0:
            return min(max(b, lo), hi)
        if abs(e) < tol1 or abs(fa) <= abs(fb):
            d = e = m
        else:
            s = fb / fa
            if a == c:
                p, q = 2.0 * m * s, 1.0 - s
            else:
                q, r = fa / fc, fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol1 * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        a, fa = b, fb
        b = b + d if abs(d) > tol1 else b + math.copysign(tol1, m)
        fb = f(b)
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
    return min(max(b, lo), hi)
