"""Algebraic inequalities behind the main estimate.

All two-point quantities are evaluated on the normalized interval (1, t),
t = b/a, which is enough by homogeneity. Exponential differences are written
with expm1 and e2(x) = e^x - 1 - x so that the leading terms cancel exactly
rather than numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .closedform import m_normalized
from .params import DEFAULT_TOL, Weights, classify, derive

GapKind = Literal["main", "hyperbolic", "mhat", "lambda_mono"]


@dataclass(frozen=True)
class GapRecord:
    params: Weights
    a: float
    b: float
    gap: float
    kind: GapKind

    def __post_init__(self):
        if not math.isfinite(self.gap):
            raise ArithmeticError(f"non-finite {self.kind} gap at {self.params}, ({self.a}, {self.b})")


def e2(x: float) -> float:
    """e^x - 1 - x without cancellation for small |x|."""
    if abs(x) > 0.5:
        return math.expm1(x) - x
    term, total, n = x * x / 2.0, 0.0, 2
    while abs(term) > 1e-17 * abs(total) or n < 4:
        total += term
        n += 1
        term *= x / n
    return total


def default_t_grid(n: int = 200) -> np.ndarray:
    """Geometric grid of ratios b/a on [1 + 1e-4, 1e4]."""
    return np.geomspace(1.0 + 1e-4, 1e4, n)


# Laurent expansion of the coth gap in L = log t.

_SERIES_ORDER = 12
# L * 2 coth(L/2) = 4 sum B_2k L^2k / (2k)!
_COTH_COEFFS = [0.0] * (_SERIES_ORDER + 1)
for _k, _b in enumerate([1, Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42),
                         Fraction(-1, 30), Fraction(5, 66), Fraction(-691, 2730)]):
    if 2 * _k <= _SERIES_ORDER:
        _COTH_COEFFS[2 * _k] = float(4 * Fraction(_b) / math.factorial(2 * _k))


def _series_inverse(c: list[float]) -> list[float]:
    out = [1.0 / c[0]]
    for k in range(1, len(c)):
        out.append(-sum(c[j] * out[k - j] for j in range(1, k + 1)) / c[0])
    return out


def _series_mul(u: list[float], v: list[float]) -> list[float]:
    n = min(len(u), len(v))
    return [sum(u[j] * v[k - j] for j in range(k + 1)) for k in range(n)]


def curve_excess(w: Weights) -> float:
    """beta^2 - alpha (beta+1), rounded once from the exact value of the float inputs."""
    a, b = Fraction(w.alpha), Fraction(w.beta)
    return float(b * b - a * (b + 1))


def _coth_gap_series(w: Weights, L: float) -> float:
    p, q, g = w.beta + 1.0, w.alpha + 2.0, w.gamma
    K = _SERIES_ORDER + 1
    fact = [float(math.factorial(n)) for n in range(K + 3)]
    # N1 / L^2, -N2 / L^2 and expm1(qL) / L as power series in L
    A = [(p * q**n - q * p**n) / fact[n] for n in range(2, K + 2)]
    B = [(g * q**n - q * g**n) / fact[n] for n in range(2, K + 2)]
    C = [q**n / fact[n] for n in range(1, K + 1)]
    inv = [x + y for x, y in zip(_series_inverse(A), _series_inverse(B))]
    lhs = _series_mul(C, inv)
    # the 1/L coefficient is 4/(p g) - 4 = 4 (beta^2 - alpha (beta+1)) / (p g)
    lead = 4.0 * curve_excess(w) / (p * g)
    total = 0.0
    for k in range(K - 1, 0, -1):
        total = total * L + (lhs[k] - _COTH_COEFFS[k])
    return lead / L + total


def coth_gap_normalized(w: Weights, t: float) -> float:
    """1/(1+beta-m) - 1/(1+beta-t^gamma m) - 2(t+1)/(t-1) with m = m(1, t)."""
    if not t > 1.0:
        raise ValueError(f"need t > 1, got {t}")
    p, q, g = w.beta + 1.0, w.alpha + 2.0, w.gamma
    if p * g == 0.0:
        raise ValueError("need beta != -1 and gamma != 0")
    L = math.log(t)
    if L * max(abs(p), abs(q), abs(g), 1.0) <= 0.05:
        return _coth_gap_series(w, L)
    n1 = p * e2(q * L) - q * e2(p * L)
    n2 = q * e2(g * L) - g * e2(q * L)
    lhs = math.expm1(q * L) * (1.0 / n1 - 1.0 / n2)
    return lhs - 2.0 / math.tanh(0.5 * L)


def main_gap(w: Weights, a: float, b: float, force: bool = False, tol: float = DEFAULT_TOL) -> float:
    """LHS - RHS of 1/(1+beta-m a^gamma) - 1/(1+beta-m b^gamma) >= 2(a+b)/(b-a).

    Args:
        force: evaluate even when w is outside the region where the
            inequality is claimed.
    """
    if not (0 < a < b):
        raise ValueError(f"need 0 < a < b, got ({a}, {b})")
    if not force and not classify(w, tol).in_P:
        raise ValueError(f"{w} is outside the parameter region; pass force=True to evaluate anyway")
    return coth_gap_normalized(w, b / a)


def pminus_lhs(beta: float, t: float) -> float:
    """Closed form of the left side on alpha = 2 beta: (2/(beta+1)) (t^(beta+1)+1)/(t^(beta+1)-1)."""
    p = beta + 1.0
    e = math.expm1(p * math.log(t))
    return 2.0 / p * (e + 2.0) / e


def main_lhs(w: Weights, t: float) -> float:
    """Left side 1/(1+beta-m) - 1/(1+beta-t^gamma m) on (1, t)."""
    p, q, g = w.beta + 1.0, w.alpha + 2.0, w.gamma
    L = math.log(t)
    n1 = p * e2(q * L) - q * e2(p * L)
    n2 = q * e2(g * L) - g * e2(q * L)
    return math.expm1(q * L) * (1.0 / n1 - 1.0 / n2)


# Hyperbolic form on the boundary curve.

def _hyperbolic_coefficients(n_max: int = 14) -> list[tuple[float, list[int]]]:
    """Series data for the hyperbolic gap in powers of lam.

    The lam^(2n-1) coefficient is c_n (y^2 - 4) R_n(y) with y = x + 1/x, where
    R_n has integer coefficients (highest degree first) obtained by exact
    division and c_n = 2 B_2n / (2n)!.
    """
    bern = [Fraction(1), Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
            Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
            Fraction(43867, 798), Fraction(-174611, 330), Fraction(854513, 138),
            Fraction(-236364091, 2730), Fraction(8553103, 6), Fraction(-23749461029, 870)]
    # Dickson polynomials V_k(y) = x^k + x^-k, coefficient lists lowest degree first
    V = [[2], [0, 1]]
    for k in range(2, 2 * n_max + 2):
        nxt = [0] + V[-1]
        for i, c in enumerate(V[-2]):
            nxt[i] -= c
        V.append(nxt)
    out = []
    for n in range(2, n_max + 1):
        k = 2 * n + 1
        poly = V[k][:] + [0] * (k + 1 - len(V[k]))
        poly[k] -= 1
        poly[1] += 4**n - 1
        # divide by y^2 - 4, highest degree first
        hi = poly[::-1]
        quo = []
        rem = hi[:]
        for i in range(len(hi) - 2):
            c = rem[i]
            quo.append(c)
            rem[i + 2] += 4 * c
        if any(rem[-2:]):
            raise AssertionError("hyperbolic series division is not exact")
        coef = 2 * bern[n] / math.factorial(2 * n)
        out.append((float(coef), quo))
    return out


_HYP_SERIES = _hyperbolic_coefficients()


def hyperbolic_gap(x: float, lam: float) -> float:
    """(1/x)^2 coth(lam/2x) + x^2 coth(lam x/2) - y^2 coth(lam y/2) + y tanh(lam/2), y = x + 1/x.

    For lam y <= 1 the O(1/lam) and O(lam) terms cancel identically, so the
    value is summed from its power series, whose coefficients carry the exact
    factor (x - 1/x)^2.
    """
    if not (x > 0 and lam > 0):
        raise ValueError("need x > 0 and lam > 0")
    y = x + 1.0 / x
    if lam * y <= 1.0:
        d = (x - 1.0) * (x + 1.0) / x
        lam2 = lam * lam
        total, power = 0.0, lam**3
        for coef, quo in _HYP_SERIES:
            r = 0
            for c in quo:
                r = r * y + c
            term = coef * r * power
            total += term
            if abs(term) <= 1e-18 * abs(total):
                break
            power *= lam2
        return d * d * total
    coth = lambda z: 1.0 / math.tanh(z)  # noqa: E731
    return (coth(lam / (2.0 * x)) / (x * x) + x * x * coth(lam * x / 2.0)
            - y * y * coth(lam * y / 2.0) + y * math.tanh(lam / 2.0))


def equivalence_check(w: Weights, t: float, tol: float = 1e-9) -> tuple[float, float]:
    """(main gap on (1, t), hyperbolic gap at x = beta+1, lam = log t) for w on the boundary curve."""
    flags = classify(w, tol)
    if not flags.in_P_plus or (abs(w.alpha) <= tol and abs(w.beta) <= tol):
        raise ValueError(f"{w} is not a non-origin point of the boundary curve")
    if not t > 1:
        raise ValueError("need t > 1")
    return coth_gap_normalized(w, t), hyperbolic_gap(w.beta + 1.0, math.log(t))


def mhat_gap(w: Weights, a: float, b: float, force: bool = False, tol: float = DEFAULT_TOL) -> float:
    """2(beta+1)/(b^gamma - a^gamma) - mhat(a, b)."""
    if not (0 < a < b):
        raise ValueError(f"need 0 < a < b, got ({a}, {b})")
    flags = classify(w, tol)
    if not force and (not flags.in_P or flags.in_P_minus):
        raise ValueError(f"{w} must lie in the region minus the alpha = 2 beta segment")
    p, q, g = w.beta + 1.0, w.alpha + 2.0, w.gamma
    L = math.log(b / a)
    val = 2.0 * p / math.expm1(g * L) - q * (math.exp(p * L) + 1.0) / math.expm1(q * L)
    return a ** (-g) * val


def bigM(tau: float, zeta: float) -> float:
    """((zeta+1)/zeta) (tau^zeta - 1)/(tau^(zeta+1) - 1), equal to 1 at tau = 1."""
    if not tau >= 1.0:
        raise ValueError(f"need tau >= 1, got {tau}")
    if tau == 1.0:
        return 1.0
    L = math.log(tau)
    return (zeta + 1.0) / zeta * math.expm1(zeta * L) / math.expm1((zeta + 1.0) * L)


def bigLambda(tau: float, zeta: float) -> float:
    """1/(1 - M(tau)) - 1/(1 - tau M(tau)) for tau > 1."""
    if not tau > 1.0:
        raise ValueError(f"need tau > 1, got {tau}")
    L = math.log(tau)
    z1 = zeta + 1.0
    ez1 = math.expm1(z1 * L)
    one_minus_m = (zeta * e2(z1 * L) - z1 * e2(zeta * L)) / (zeta * ez1)
    one_minus_tau_m = (z1 * e2(L) - e2(z1 * L)) / (zeta * ez1)
    return 1.0 / one_minus_m - 1.0 / one_minus_tau_m


def identity_lambda_main(w: Weights, t: float) -> float:
    """|[1/(beta+1-m) - 1/(beta+1-t^gamma m)] - Lambda(t^gamma)/(beta+1)| on (1, t).

    The left side uses m from its definition, the right side only zeta and
    tau = t^gamma, so the two routes share no intermediate values.
    """
    d = derive(w)
    if d.zeta is None or not d.gamma > 0:
        raise ValueError("need gamma > 0")
    if not t > 1:
        raise ValueError("need t > 1")
    p = w.beta + 1.0
    m = m_normalized(w, t)
    lhs = 1.0 / (p - m) - 1.0 / (p - t**d.gamma * m)
    return abs(lhs - bigLambda(t**d.gamma, d.zeta) / p)


def young_expression(tau: float, zeta: float) -> float:
    """tau^(zeta+1) - (zeta+1) tau + zeta, positive for tau > 1."""
    return tau ** (zeta + 1.0) - (zeta + 1.0) * tau + zeta


def holder_ratio(t: float, top: float, bottom: float) -> float:
    """(t^bottom - 1)/(t^top - 1), decreasing in t when top > bottom > 0."""
    L = math.log(t)
    return math.expm1(bottom * L) / math.expm1(top * L)


def gap_sweep(kind: GapKind, w: Weights, ts=None, force: bool = False) -> list[GapRecord]:
    """Evaluate one gap over a grid of ratios t = b/a on the interval (1, t)."""
    ts = default_t_grid() if ts is None else ts
    out = []
    for t in ts:
        t = float(t)
        if kind == "main":
            g = main_gap(w, 1.0, t, force=force)
        elif kind == "mhat":
            g = mhat_gap(w, 1.0, t, force=force)
        elif kind == "hyperbolic":
            g = hyperbolic_gap(w.beta + 1.0, math.log(t))
        elif kind == "lambda_mono":
            d = derive(w)
            g = bigLambda(t, d.zeta) - bigLambda(t * 1.01, d.zeta)
        else:
            raise ValueError(f"unknown gap kind {kind!r}")
        out.append(GapRecord(w, 1.0, t, g, kind))
    return out
