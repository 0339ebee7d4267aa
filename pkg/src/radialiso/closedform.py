"""Closed-form solutions of the constant generalized curvature equation.

The linear equation is

    u' + (beta+1) u / tau + lam tau^(alpha-beta) = 0,

solved by u(tau) = tau^-(beta+1) (c - lam tau^(alpha+2)/(alpha+2)). Its
reciprocal w = 1/u for the data u(a) = u(b) = 1 solves the Riccati equation

    w' + m tau^(alpha-beta) w^2 = (beta+1) w / tau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .params import Weights
from .quad import bracket_root


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not (0.0 <= self.a < self.b < math.inf):
            raise ValueError(f"need 0 <= a < b < inf, got ({self.a}, {self.b})")


@dataclass(frozen=True)
class BoundaryData:
    eta1: int
    eta2: int

    def __post_init__(self):
        if self.eta1 not in (-1, 1) or self.eta2 not in (-1, 1):
            raise ValueError(f"boundary signs must be +-1, got ({self.eta1}, {self.eta2})")


def _check_ab(a: float, b: float) -> None:
    if not (a > 0 and b > a):
        raise ValueError(f"need 0 < a < b, got ({a}, {b})")


def _check_alpha(w: Weights) -> None:
    if w.alpha + 2.0 == 0.0:
        raise ValueError("alpha = -2 is excluded")


def m_normalized(w: Weights, t: float) -> float:
    """m(1, t), the multiplier on the interval (1, t).

    Written as (alpha+2) expm1((beta+1) L) / expm1((alpha+2) L) with L = log t,
    which stays accurate as t -> 1 where it tends to beta + 1.
    """
    p, q = w.beta + 1.0, w.alpha + 2.0
    if t == 1.0:
        return p
    L = math.log(t)
    return q * math.expm1(p * L) / math.expm1(q * L)


def mhat_normalized(w: Weights, t: float) -> float:
    p, q = w.beta + 1.0, w.alpha + 2.0
    L = math.log(t)
    return q * (math.exp(p * L) + 1.0) / math.expm1(q * L)


def multiplier_m(w: Weights, a: float, b: float) -> float:
    """(alpha+2)(b^(beta+1) - a^(beta+1)) / (b^(alpha+2) - a^(alpha+2))."""
    _check_ab(a, b)
    _check_alpha(w)
    return a ** (-w.gamma) * m_normalized(w, b / a)


def multiplier_mhat(w: Weights, a: float, b: float) -> float:
    """(alpha+2)(b^(beta+1) + a^(beta+1)) / (b^(alpha+2) - a^(alpha+2))."""
    _check_ab(a, b)
    _check_alpha(w)
    return a ** (-w.gamma) * mhat_normalized(w, b / a)


@dataclass(frozen=True)
class LinearSolution:
    """u(tau) = c tau^-(beta+1) - lam tau^gamma / (alpha+2).

    ``eta`` is None for the solution on (0, b] that vanishes at the origin.
    """

    weights: Weights
    interval: Interval
    eta: Optional[BoundaryData]
    lam: float
    c: float

    def u(self, tau):
        w = self.weights
        tau = np.asarray(tau, dtype=float)
        out = -self.lam / (w.alpha + 2.0) * tau**w.gamma
        if self.c != 0.0:
            out = out + self.c * tau ** (-(w.beta + 1.0))
        return out

    def du(self, tau):
        w = self.weights
        tau = np.asarray(tau, dtype=float)
        out = -self.lam * w.gamma / (w.alpha + 2.0) * tau ** (w.gamma - 1.0)
        if self.c != 0.0:
            out = out - (w.beta + 1.0) * self.c * tau ** (-(w.beta + 2.0))
        return out

    def residual(self, tau):
        """u' + (beta+1) u / tau + lam tau^(alpha-beta)."""
        w = self.weights
        tau = np.asarray(tau, dtype=float)
        return self.du(tau) + (w.beta + 1.0) * self.u(tau) / tau + self.lam * tau ** (w.alpha - w.beta)


def solve_linear(w: Weights, iv: Interval, eta: BoundaryData) -> LinearSolution:
    """Solution with u(a) = eta1, u(b) = eta2.

    The multiplier is -m, -mhat, mhat or m for eta = (1,1), (-1,1), (1,-1),
    (-1,-1); the constant comes from the boundary condition at a.
    """
    if iv.a == 0.0:
        raise ValueError("a = 0 is handled by solve_linear_origin")
    _check_alpha(w)
    a, b = iv.a, iv.b
    if eta.eta1 == eta.eta2:
        lam = -eta.eta1 * multiplier_m(w, a, b)
    else:
        lam = -eta.eta2 * multiplier_mhat(w, a, b)
    c = eta.eta1 * a ** (w.beta + 1.0) + lam * a ** (w.alpha + 2.0) / (w.alpha + 2.0)
    return LinearSolution(w, iv, eta, lam, c)


def boundary_system(w: Weights, iv: Interval, eta: BoundaryData) -> tuple[float, float, float]:
    """(lam, c_left, c_right) from the two boundary equations solved as a linear system.

    c_left and c_right are the constants implied by each boundary equation
    given the common multiplier; they coincide for the unique solution.
    """
    _check_alpha(w)
    a, b = iv.a, iv.b
    q = w.alpha + 2.0
    mat = np.array([[1.0, -(a**q) / q], [1.0, -(b**q) / q]])
    rhs = np.array([eta.eta1 * a ** (w.beta + 1.0), eta.eta2 * b ** (w.beta + 1.0)])
    c, lam = np.linalg.solve(mat, rhs)
    c_left = rhs[0] + lam * a**q / q
    c_right = rhs[1] + lam * b**q / q
    return float(lam), float(c_left), float(c_right)


def solve_linear_origin(w: Weights, b: float) -> LinearSolution:
    """Solution on (0, b] with u(0) = 0 and u(b) = 1, namely u = (tau/b)^gamma."""
    if not b > 0:
        raise ValueError("b must be positive")
    if not w.gamma > 0:
        raise ValueError("the origin solution needs gamma > 0")
    lam = -(w.alpha + 2.0) / b**w.gamma
    return LinearSolution(w, Interval(0.0, b), None, lam, 0.0)


@dataclass(frozen=True)
class RiccatiSolution:
    """w(tau) = tau^(beta+1) / (c + lam tau^(alpha+2)/(alpha+2)) with lam = m(a, b)."""

    weights: Weights
    interval: Interval
    lam: float
    c: float
    argmax: float = field(default=float("nan"))

    def _den(self, tau):
        return self.c + self.lam * tau ** (self.weights.alpha + 2.0) / (self.weights.alpha + 2.0)

    def w(self, tau):
        tau = np.asarray(tau, dtype=float)
        return tau ** (self.weights.beta + 1.0) / self._den(tau)

    def dw(self, tau):
        wt = self.weights
        tau = np.asarray(tau, dtype=float)
        den = self._den(tau)
        return tau**wt.beta * self._slope_sign(tau) / den**2

    def _slope_sign(self, tau):
        # numerator of w' up to the positive factor tau^beta / den^2
        wt = self.weights
        return (wt.beta + 1.0) * self._den(tau) - self.lam * tau ** (wt.alpha + 2.0)

    def residual(self, tau):
        """w' + lam tau^(alpha-beta) w^2 - (beta+1) w / tau."""
        wt = self.weights
        tau = np.asarray(tau, dtype=float)
        wv = self.w(tau)
        return self.dw(tau) + self.lam * tau ** (wt.alpha - wt.beta) * wv**2 - (wt.beta + 1.0) * wv / tau

    @property
    def max_value(self) -> float:
        return float(self.w(self.argmax))


def solve_riccati(w: Weights, iv: Interval) -> RiccatiSolution:
    """Riccati solution with w(a) = w(b) = 1 and its maximiser on [a, b]."""
    if iv.a == 0.0:
        raise ValueError("a must be positive")
    _check_alpha(w)
    a, b = iv.a, iv.b
    m = multiplier_m(w, a, b)
    c = a ** (w.beta + 1.0) - m * a ** (w.alpha + 2.0) / (w.alpha + 2.0)
    sol = RiccatiSolution(w, iv, m, c)
    ga, gb = float(sol._slope_sign(a)), float(sol._slope_sign(b))
    if ga > 0 and gb < 0:
        top = bracket_root(lambda t: float(sol._slope_sign(t)), a, b, 1e-13 * b)
    else:
        top = a if sol.w(a) >= sol.w(b) else b
    return RiccatiSolution(w, iv, m, c, top)


def critical_point(w: Weights, iv: Interval) -> float:
    """Closed-form stationary point of w: tau^(alpha+2) = (alpha+2)(beta+1) c / (gamma m)."""
    m = multiplier_m(w, iv.a, iv.b)
    q = w.alpha + 2.0
    c = iv.a ** (w.beta + 1.0) - m * iv.a**q / q
    return (q * (w.beta + 1.0) * c / (w.gamma * m)) ** (1.0 / q)


def reference_w0(a: float, b: float) -> RiccatiSolution:
    """The unweighted Riccati solution, equal to 2 A tau / (G^2 + tau^2)."""
    _check_ab(a, b)
    return solve_riccati(Weights(0.0, 0.0), Interval(a, b))


def w0_explicit(a: float, b: float, tau):
    """2 A tau / (G^2 + tau^2) with A the arithmetic and G the geometric mean of a, b."""
    tau = np.asarray(tau, dtype=float)
    return (a + b) * tau / (a * b + tau * tau)


def w0_sup(a: float, b: float) -> float:
    """sup of w0 on [a, b], attained at sqrt(ab): A / G."""
    return 0.5 * (a + b) / math.sqrt(a * b)


def curvature(sol: LinearSolution, tau: float) -> tuple[float, float]:
    """Curvature k = (tau u)'/tau and the weighted combination tau^(beta-alpha)(k + beta u/tau)."""
    iv = sol.interval
    slack = 1e-12 * iv.b
    if not (iv.a - slack <= tau <= iv.b + slack) or tau <= 0:
        raise ValueError(f"tau={tau} outside ({iv.a}, {iv.b}]")
    w = sol.weights
    u = float(sol.u(tau))
    k = u / tau + float(sol.du(tau))
    return k, tau ** (w.beta - w.alpha) * (k + w.beta * u / tau)
