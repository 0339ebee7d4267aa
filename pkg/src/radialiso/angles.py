"""Angle integrals and distribution functions with respect to d mu = d tau / tau.

Angle integrals are computed in s = log tau, where mu becomes Lebesgue
measure. The integrands blow up like an inverse square root wherever
|u| = 1 or w = 1, which happens only at the interval ends.
"""

from __future__ import annotations

import math

import numpy as np

from .closedform import LinearSolution, RiccatiSolution, w0_sup
from .inequalities import coth_gap_normalized
from .params import Weights
from .quad import (
    DEFAULT_ABS_TOL,
    DEFAULT_REL_TOL,
    bracket_root,
    integrate_power_end,
    integrate_sqrt_singular,
)


def mu_measure(a: float, b: float) -> float:
    """mu((a, b)) = log(b/a)."""
    return math.log(b / a)


def _one_minus_u_sq(w: Weights, lam: float, eta_a: int, eta_b: int, s, sa: float, sb: float, split: float):
    """1 - u^2 in log variables, free of cancellation near the ends.

    With d = s - s_end and eta = u(end), the boundary condition gives
    eta - u = -eta expm1(-p d) - (lam/q) tau^gamma expm1(-q d), and
    1 - u^2 = (eta - u)(2 eta - (eta - u)). The nearer end is used.
    """
    p, q = w.beta + 1.0, w.alpha + 2.0
    s = np.asarray(s, dtype=float)
    left = s < split
    d = np.where(left, s - sa, s - sb)
    eta = np.where(left, float(eta_a), float(eta_b))
    gap = -eta * np.expm1(-p * d) - (lam / q) * np.exp(w.gamma * s) * np.expm1(-q * d)
    return gap * (2.0 * eta - gap)


def angle_linear(sol: LinearSolution, rel_tol: float = DEFAULT_REL_TOL, abs_tol: float = DEFAULT_ABS_TOL) -> float:
    """Integral of u / sqrt(1 - u^2) d mu over the solution's interval."""
    a, b = sol.interval.a, sol.interval.b
    if a == 0.0:
        return _angle_origin(sol, rel_tol, abs_tol)
    sa, sb = math.log(a), math.log(b)
    eta = sol.eta

    def f(s):
        u = sol.u(np.exp(s))
        one_minus = _one_minus_u_sq(sol.weights, sol.lam, eta.eta1, eta.eta2, s, sa, sb, 0.5 * (sa + sb))
        return u * np.sqrt((s - sa) * (sb - s) / one_minus)

    return integrate_sqrt_singular(f, sa, sb, True, True, rel_tol, abs_tol).value


def _angle_origin(sol: LinearSolution, rel_tol: float, abs_tol: float) -> float:
    # u ~ tau^gamma near 0, so the integrand u/(tau sqrt(1-u^2)) ~ tau^(gamma-1)
    b = sol.interval.b
    gamma = sol.weights.gamma
    mid = 0.5 * b

    def f(t):
        u = sol.u(t)
        return u / (t * np.sqrt((1.0 - u) * (1.0 + u)))

    near = integrate_power_end(f, 0.0, mid, gamma - 1.0, rel_tol, abs_tol).value

    sb = math.log(b)

    def g(t):
        u = sol.u(t)
        one_minus = _one_minus_u_sq(sol.weights, sol.lam, 1, 1, np.log(t), -math.inf, sb, -math.inf)
        return u / t * np.sqrt((b - t) / one_minus)

    far = integrate_sqrt_singular(g, mid, b, False, True, rel_tol, abs_tol).value
    return near + far


def angle_riccati(rsol: RiccatiSolution, rel_tol: float = DEFAULT_REL_TOL, abs_tol: float = DEFAULT_ABS_TOL) -> float:
    """Integral of 1 / sqrt(w^2 - 1) d mu over (a, b)."""
    sa, sb = math.log(rsol.interval.a), math.log(rsol.interval.b)
    # w = 1/u for the linear solution with u(a) = u(b) = 1 and multiplier -m
    wt = rsol.weights

    def f(s):
        u = 1.0 / rsol.w(np.exp(s))
        one_minus = _one_minus_u_sq(wt, -rsol.lam, 1, 1, s, sa, sb, 0.5 * (sa + sb))
        return u * np.sqrt((s - sa) * (sb - s) / one_minus)

    return integrate_sqrt_singular(f, sa, sb, True, True, rel_tol, abs_tol).value


def _preimage(fun, lo: float, hi: float, level: float) -> float:
    """Point in [lo, hi] where fun(tau) = level, solved in log tau."""
    s = bracket_root(lambda v: float(fun(math.exp(v))) - level, math.log(lo), math.log(hi), 1e-14)
    return math.exp(s)


def _check_increasing(sol: LinearSolution) -> None:
    if sol.eta is None or (sol.eta.eta1, sol.eta.eta2) != (-1, 1):
        raise ValueError("distribution functions need the solution with boundary data (-1, 1)")


def mu_u(sol: LinearSolution, t: float) -> float:
    """mu({u > t}) = log(b / u^-1(t)) for the increasing solution."""
    _check_increasing(sol)
    if not 0 < t < 1:
        raise ValueError("threshold must lie in (0, 1)")
    a, b = sol.interval.a, sol.interval.b
    return math.log(b / _preimage(sol.u, a, b, t))


def mu_neg_u(sol: LinearSolution, t: float) -> float:
    """mu({-u > t}) = log(u^-1(-t) / a)."""
    _check_increasing(sol)
    if not 0 < t < 1:
        raise ValueError("threshold must lie in (0, 1)")
    a, b = sol.interval.a, sol.interval.b
    return math.log(_preimage(sol.u, a, b, -t) / a)


def neg_dmu_u(sol: LinearSolution, t: float) -> float:
    """-mu_u'(t) = 1 / (tau u'(tau)) at tau = u^-1(t)."""
    _check_increasing(sol)
    tau = _preimage(sol.u, sol.interval.a, sol.interval.b, t)
    return 1.0 / (tau * float(sol.du(tau)))


def mu_w(rsol: RiccatiSolution, t: float) -> float:
    """mu({w > t}) = log(v2(t) / v1(t)) for 1 <= t <= max w.

    The preimages v1 < v2 are bracketed on either side of the stored maximiser.
    At t = 1 the level set is the whole interval; at t = max w it is empty.
    """
    a, b = rsol.interval.a, rsol.interval.b
    top = rsol.max_value
    if t < 1.0 or t > top:
        raise ValueError(f"threshold {t} outside [1, {top}]")
    if t == 1.0:
        return math.log(b / a)
    if t == top:
        return 0.0
    v1 = _preimage(rsol.w, a, rsol.argmax, t)
    v2 = _preimage(rsol.w, rsol.argmax, b, t)
    return math.log(v2 / v1)


def z0(a: float, b: float, t: float) -> float:
    """2 log((lam + sqrt(lam^2 - t^2)) / t) with lam = A/G, the level-set measure of w0."""
    lam = w0_sup(a, b)
    if not 0 < t <= lam:
        raise ValueError(f"threshold must lie in (0, {lam}]")
    return 2.0 * math.log((lam + math.sqrt((lam - t) * (lam + t))) / t)


def mu_w0(a: float, b: float, t: float) -> float:
    """Distribution function of w0 for t in [1, A/G]."""
    if t < 1.0:
        raise ValueError("threshold must be >= 1")
    return z0(a, b, t)


def w0_preimages(a: float, b: float, t: float) -> tuple[float, float]:
    """Roots of t tau^2 - 2 A tau + G^2 t = 0, the two points where w0 = t."""
    A, G2 = 0.5 * (a + b), a * b
    disc = math.sqrt(A * A - G2 * t * t)
    big = (A + disc) / t
    return G2 / big, big


def omega_field(t: float, x: float) -> float:
    """-(2/t) coth(x/2)."""
    if not (t > 0 and x > 0):
        raise ValueError("need t > 0 and x > 0")
    return -2.0 / (t * math.tanh(0.5 * x))


def endpoint_coth_gap(w: Weights, a: float, b: float) -> float:
    """[1/(1+beta-m a^gamma) - 1/(1+beta-m b^gamma)] - 2 coth(mu((a,b))/2)."""
    if not 0 < a < b:
        raise ValueError(f"need 0 < a < b, got ({a}, {b})")
    return coth_gap_normalized(w, b / a)


def central_difference(fun, t: float, h: float) -> float:
    return (fun(t + h) - fun(t - h)) / (2.0 * h)
