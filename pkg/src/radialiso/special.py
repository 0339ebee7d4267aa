"""Beta, digamma and Hurwitz zeta functions and the beta-function inequality.

The central object is

    W(x) = sqrt(2x) (1 + 1/(2x))^(2x) B(x, 1/2),

which satisfies W(1/2) = 2 pi and W(x) > 2 pi for x > 1/2. Its logarithmic
derivative is ``small_w``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quad import bracket_root, integrate, integrate_semi_infinite

EULER_GAMMA = 0.57721566490153286061


@dataclass(frozen=True)
class SpecialConfig:
    asymptotic_shift: int = 10
    series_terms: int = 8
    rel_tol: float = 1e-12
    abs_tol: float = 1e-14

    def __post_init__(self):
        if self.asymptotic_shift < 6:
            raise ValueError("asymptotic_shift must be >= 6")
        if not 8 <= self.series_terms <= len(_PSI_ASYMPTOTIC):
            raise ValueError(f"series_terms must lie in [8, {len(_PSI_ASYMPTOTIC)}]")


# B_2k / (2k) for k = 1..8
_PSI_ASYMPTOTIC = [1 / 12, -1 / 120, 1 / 252, -1 / 240, 1 / 132, -691 / 32760, 1 / 12, -3617 / 8160]
DEFAULT_CONFIG = SpecialConfig()


def beta_fn(x: float, y: float) -> float:
    if not (x > 0 and y > 0):
        raise ValueError("beta function arguments must be positive")
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def _psi_minus_log(z: float, cfg: SpecialConfig) -> float:
    """psi(z) - log z from the asymptotic series, for z >= asymptotic_shift."""
    inv2 = 1.0 / (z * z)
    acc = 0.0
    for c in reversed(_PSI_ASYMPTOTIC[: cfg.series_terms]):
        acc = (acc + c) * inv2
    return -0.5 / z - acc


def digamma(x: float, cfg: SpecialConfig = DEFAULT_CONFIG) -> float:
    """psi(x) by upward recurrence to x >= asymptotic_shift and the Stirling series."""
    if not x > 0:
        raise ValueError("digamma needs x > 0")
    shift = 0.0
    while x < cfg.asymptotic_shift:
        shift -= 1.0 / x
        x += 1.0
    return shift + math.log(x) + _psi_minus_log(x, cfg)


def phi(x: float, cfg: SpecialConfig = DEFAULT_CONFIG) -> float:
    """1/x - log x + psi(x)."""
    if not x > 0:
        raise ValueError("phi needs x > 0")
    if x >= cfg.asymptotic_shift:
        return 1.0 / x + _psi_minus_log(x, cfg)
    return 1.0 / x - math.log(x) + digamma(x, cfg)


def hfun(t):
    """1/t - 1/(e^t - 1), with h(0) = 1/2."""
    t = np.asarray(t, dtype=float)
    small = t < 0.1
    ts = np.where(small, t, 0.0)
    series = 0.5 - ts / 12 + ts**3 / 720 - ts**5 / 30240 + ts**7 / 1209600
    tb = np.where(small, 1.0, t)
    direct = 1.0 / tb - 1.0 / np.expm1(tb)
    out = np.where(small, series, direct)
    return float(out) if out.ndim == 0 else out


def hfun_second_derivative(t):
    """h''(t) = 2/t^3 - cosh(t/2) / (4 sinh^3(t/2))."""
    t = np.asarray(t, dtype=float)
    small = t < 0.1
    ts = np.where(small, t, 0.0)
    series = ts / 120 - ts**3 / 1512 + ts**5 / 28800 - ts**7 / 665280
    tb = np.where(small, 1.0, t)
    direct = 2.0 / tb**3 - 0.25 * np.cosh(tb / 2) / np.sinh(tb / 2) ** 3
    out = np.where(small, series, direct)
    return float(out) if out.ndim == 0 else out


def rho(t):
    """h(t) + h(t/2)/2 - 1/2."""
    t = np.asarray(t, dtype=float)
    out = hfun(t) + 0.5 * hfun(t / 2.0) - 0.5
    return float(out) if np.ndim(out) == 0 else out


def rho_root() -> float:
    """The zero of rho, which lies beyond 5/2."""
    return bracket_root(rho, 2.5, 50.0, 1e-13)


def phi_binet(x: float, rel_tol: float = 1e-12) -> float:
    """phi(x) as the integral of h(t) e^(-t x) over (0, inf)."""
    if not x > 0:
        raise ValueError("phi needs x > 0")

    def f(t):
        return hfun(t) * np.exp(-t * x)

    head = integrate(f, 0.0, 1.0, rel_tol, 1e-15).value
    tail = integrate_semi_infinite(f, 1.0, x, rel_tol, 1e-15).value
    return head + tail


def small_w(x: float, cfg: SpecialConfig = DEFAULT_CONFIG) -> float:
    """phi(x) - phi(x + 1/2) + log(1 + 1/(2x)) - 1/(2x), the derivative of log W."""
    if not x > 0:
        raise ValueError("w needs x > 0")
    u = 0.5 / x
    return phi(x, cfg) - phi(x + 0.5, cfg) + math.log1p(u) - u


def _series_coefficient(j, h):
    return (2 * j + 5 + 2 * h) / ((j + 2) * (j + 3) * (j + 2 + 2 * h) * (j + 3 + 2 * h))


def small_w_series(h: float, n: int) -> float:
    """w(1/2 + h) from the closed-form part plus n terms of the alternating series."""
    if not abs(h) < 0.5:
        raise ValueError("need |h| < 1/2")
    j = np.arange(n, dtype=float)
    signs = np.where(j % 2 == 0, 1.0, -1.0)
    alt = float(np.sum(signs * _series_coefficient(j, h)))
    closed = 2.0 * math.log((1 + h) / (1 + 2 * h)) + h * (6 * h + 5) / (2 * (1 + h) * (1 + 2 * h))
    return closed - 2.0 * h * alt


def small_w_series_bound(h: float, n: int) -> float:
    """First omitted term of small_w_series, a bound on its truncation error."""
    return 2.0 * abs(h) * _series_coefficient(n, h)


def small_w_lower_bound(h: float) -> float:
    """Lower bound 2h(2+h)(1/2-h) / (3(1+h)(1+2h)(3+2h)) for w(1/2 + h), 0 < h < 1/2."""
    return 2 * h * (2 + h) * (0.5 - h) / (3 * (1 + h) * (1 + 2 * h) * (3 + 2 * h))


def log_cap_W(x: float) -> float:
    return (0.5 * math.log(2 * x) + 2 * x * math.log1p(0.5 / x)
            + math.lgamma(x) + math.lgamma(0.5) - math.lgamma(x + 0.5))


def cap_W(x: float, allow_below: bool = False) -> float:
    """sqrt(2x) (1 + 1/(2x))^(2x) B(x, 1/2).

    Args:
        allow_below: evaluate for 0 < x < 1/2 as well (diagnostics only).
    """
    if not (x >= 0.5 or (allow_below and x > 0)):
        raise ValueError("W is defined here for x >= 1/2")
    return math.exp(log_cap_W(x))


def int_w(x: float, cfg: SpecialConfig = DEFAULT_CONFIG) -> float:
    """Integral of small_w over [1/2, x] by quadrature."""
    if not x >= 0.5:
        raise ValueError("need x >= 1/2")
    if x == 0.5:
        return 0.0
    return integrate(lambda y: small_w(y, cfg), 0.5, x, cfg.rel_tol, cfg.abs_tol, vectorized=False).value


def int_w_rep(x: float, cfg: SpecialConfig = DEFAULT_CONFIG) -> float:
    """Integral of small_w over [1/2, x] from its single-integral representation

        int_0^inf (1/t)(e^(-t/2) - e^(-t x)) rho(t) (1 - e^(-t/2)) dt.
    """
    if not x >= 0.5:
        raise ValueError("need x >= 1/2")
    if x == 0.5:
        return 0.0

    def f(t):
        t = np.asarray(t, dtype=float)
        kernel = -np.exp(-t / 2) * np.expm1(-t * (x - 0.5)) / t
        return kernel * rho(t) * (-np.expm1(-t / 2))

    head = integrate(f, 0.0, 1.0, cfg.rel_tol, cfg.abs_tol).value
    tail = integrate_semi_infinite(f, 1.0, 0.5, cfg.rel_tol, cfg.abs_tol).value
    return head + tail


def Y_of_x(x: float) -> float:
    """Ratio of the two kernel integrals, (x^2 + x/2 - 1/2)/(x(x+1/2)) over log(1 + (x-1/2)/(x+1/2))."""
    if not x >= 1:
        raise ValueError("need x >= 1")
    return (x * x + 0.5 * x - 0.5) / (x * (x + 0.5)) / math.log1p((x - 0.5) / (x + 0.5))


def Y_kernel_integrals(x: float, rel_tol: float = 1e-12) -> tuple[float, float]:
    """Quadrature of the two kernel integrals whose ratio is Y.

    Returns (int (e^(-t/2) - e^(-tx))(1 - e^(-t/2)) dt,
             int (1/t)(e^(-t/2) - e^(-tx))(1 - e^(-t/2)) dt), both over (0, inf).
    """
    def kern(t):
        return -np.exp(-t / 2) * np.expm1(-t * (x - 0.5)) * (-np.expm1(-t / 2))

    def total(f):
        return integrate(f, 0.0, 1.0, rel_tol, 1e-15).value + integrate_semi_infinite(f, 1.0, 0.5, rel_tol, 1e-15).value

    return total(kern), total(lambda t: kern(t) / t)


def hurwitz_zeta(a: float, s: float, terms: int = 10_000) -> float:
    """sum_{p >= 0} (a + p)^(-s) by direct summation and an Euler-Maclaurin tail."""
    if not s > 1:
        raise ValueError("need s > 1")
    if not a > 0:
        raise ValueError("need a > 0")
    head = float(np.sum((a + np.arange(terms, dtype=float)) ** (-s)))
    z = a + terms
    tail = (z ** (1 - s) / (s - 1) + 0.5 * z ** (-s) + s * z ** (-s - 1) / 12
            - s * (s + 1) * (s + 2) * z ** (-s - 3) / 720)
    return head + tail


def zeta_diff(a: float, s: float, term_tol: float = 1e-14, max_terms: int = 1_000_000) -> float:
    """zeta(a, s) - zeta(a + 1/2, s) from the alternating half-step series.

    Summation stops at the first term below ``term_tol``; half of that term
    is added, the usual midpoint correction for an alternating series.
    """
    if not s > 1:
        raise ValueError("need s > 1")
    if not a > 0:
        raise ValueError("need a > 0")
    # terms behave like (s/2)(a + j/2)^(-s-1); size the block from that estimate
    est = int(2 * ((s / 2) / term_tol) ** (1 / (s + 1))) + 16
    n = min(max(est, 64), max_terms)
    j = np.arange(n, dtype=float)
    d = (a + j / 2 + 0.5) ** (-s) - (a + j / 2 + 1) ** (-s)
    small = np.nonzero(d < term_tol)[0]
    stop = int(small[0]) if small.size else n - 1
    signs = np.where(j[:stop] % 2 == 0, 1.0, -1.0)
    alt = float(np.sum(signs * d[:stop])) + 0.5 * (1 if stop % 2 == 0 else -1) * d[stop]
    return a ** (-s) - 0.5 * (a + 0.5) ** (-s) - 0.5 * alt


def digamma_taylor(center: float, h: float, n: int) -> tuple[float, float]:
    """Partial sum of psi(center + h) = psi(center) + sum_k (-1)^(k+1) zeta(center, k+1) h^k.

    Returns (partial sum with n terms, magnitude of the first omitted term).
    For 0 < h < center the series alternates with decreasing terms, so the
    second value bounds the truncation error.
    """
    base = digamma(center)
    total = base
    for k in range(1, n + 1):
        total += (-1) ** (k + 1) * hurwitz_zeta(center, k + 1.0) * h**k
    return total, abs(hurwitz_zeta(center, n + 2.0) * h ** (n + 1))
