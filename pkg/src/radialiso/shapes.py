"""Weighted volume and perimeter of concrete planar sets.

V_alpha(E) is the integral of |x|^alpha over E and P_beta(E) the integral of
|x|^beta along its boundary. For sets bounded by a closed parametric curve
p(phi), both reduce to one-dimensional integrals:

    P = int |p|^beta |p'| dphi,
    V = int |p|^alpha (p x p') / (alpha + 2) dphi,

the second being the flux of x |x|^alpha / (alpha + 2), whose divergence is
|x|^alpha. Cap-symmetric sets {|phi| < theta(tau)} use

    P = 2 int sqrt(1 + tau^2 theta'^2) tau^beta dtau,
    V = 2 int theta tau^(alpha+1) dtau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Literal, Union

import numpy as np

from .params import Weights, classify
from .quad import DEFAULT_ABS_TOL, DEFAULT_REL_TOL, integrate, integrate_power_end
from .special import beta_fn, cap_W

EndKind = Literal["smooth", "sqrt", "origin"]
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CenteredBall:
    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class CenteredAnnuliUnion:
    """Union of the annuli a_1 < |x| < a_0, a_3 < |x| < a_2, ..."""

    radii: tuple[float, ...]

    def __post_init__(self):
        r = self.radii
        if len(r) == 0 or len(r) % 2:
            raise ValueError("annuli union needs an even, non-zero number of radii")
        if any(x <= 0 for x in r) or any(r[i] <= r[i + 1] for i in range(len(r) - 1)):
            raise ValueError("radii must be positive and strictly decreasing")


@dataclass(frozen=True)
class OffCenterBall:
    """Disc of radius r centred at (d, 0); d = r touches the origin."""

    d: float
    r: float

    def __post_init__(self):
        if not (self.d >= 0 and self.r > 0):
            raise ValueError("need d >= 0 and r > 0")


@dataclass(frozen=True)
class FourierStar:
    """Star-shaped set about ``center`` with radius r0 (1 + sum_k eps_k cos(k phi)).

    The perturbation is bounded by |eps_k| <= 0.2 for k <= 4, so the radius
    stays above 0.2 r0.
    """

    center: tuple[float, float]
    r0: float
    eps: tuple[float, ...]

    def __post_init__(self):
        if not self.r0 > 0:
            raise ValueError("r0 must be positive")
        if len(self.eps) > 4 or any(abs(e) > 0.2 for e in self.eps):
            raise ValueError("at most 4 coefficients, each of size <= 0.2")


@dataclass(frozen=True)
class PolarGraph:
    """Cap-symmetric set {(tau, phi): a < tau < b, |phi| < theta(tau)}.

    theta and dtheta must accept numpy arrays. ``left``/``right`` describe the
    behaviour at the ends: "sqrt" when theta' blows up like an inverse square
    root, "origin" when a = 0, "smooth" otherwise.
    """

    a: float
    b: float
    theta: Callable
    dtheta: Callable
    left: EndKind = "sqrt"
    right: EndKind = "sqrt"

    def __post_init__(self):
        if not 0 <= self.a < self.b:
            raise ValueError("need 0 <= a < b")
        if (self.left == "origin") != (self.a == 0):
            raise ValueError("left end kind 'origin' is used exactly when a = 0")
        if self.right == "origin":
            raise ValueError("the right end cannot be the origin")
        probe = np.linspace(self.a, self.b, 17)[1:-1]
        th = np.asarray(self.theta(probe))
        if np.any(th <= 0) or np.any(th > math.pi + 1e-12):
            raise ValueError("theta must take values in (0, pi]")


@dataclass(frozen=True)
class CompetitorE:
    """The cap-symmetric set with theta(tau) = arccos((tau/b)^gamma)/gamma, cusp at 0."""

    b: float
    weights: Weights

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError("b must be positive")
        if not 0.5 <= self.weights.gamma < 1.0:
            raise ValueError("the competitor needs gamma in [1/2, 1)")


Shape = Union[CenteredBall, CenteredAnnuliUnion, OffCenterBall, FourierStar, PolarGraph, CompetitorE]


@dataclass(frozen=True)
class MeasurePair:
    volume: float
    perimeter: float


def _check_weights(w: Weights) -> None:
    if not (w.alpha > -2 and w.beta > -1):
        raise ValueError(f"measures need alpha > -2 and beta > -1, got {w}")


def _ball_volume(t, w: Weights):
    return TWO_PI * t ** (w.alpha + 2.0) / (w.alpha + 2.0)


# Parametric boundaries.

def _offcenter_curve(shape: OffCenterBall):
    """Circle parametrized by the angle psi from its point nearest the origin.

    p(psi) = (d - r cos psi, r sin psi) runs clockwise. Working from that
    point keeps |p| = sqrt((d - r)^2 + 4 d r sin^2(psi/2)) accurate where the
    tangent ball touches the origin.
    """
    d, r = shape.d, shape.r

    def curve(psi):
        psi = np.asarray(psi, dtype=float)
        c, s = np.cos(psi), np.sin(psi)
        p = (d - r * c, r * s)
        dp = (r * s, r * c)
        norm = np.sqrt((d - r) ** 2 + 4.0 * d * r * np.sin(0.5 * psi) ** 2)
        return p, dp, norm

    return curve


def _star_curve(shape: FourierStar):
    cx, cy = shape.center
    k = np.arange(1, len(shape.eps) + 1, dtype=float)
    eps = np.asarray(shape.eps, dtype=float)

    def curve(phi):
        phi = np.asarray(phi, dtype=float)
        kp = np.multiply.outer(phi, k)
        rho = shape.r0 * (1.0 + np.cos(kp) @ eps)
        drho = -shape.r0 * (np.sin(kp) @ (k * eps))
        c, s = np.cos(phi), np.sin(phi)
        p = (cx + rho * c, cy + rho * s)
        dp = (drho * c - rho * s, drho * s + rho * c)
        return p, dp, np.hypot(p[0], p[1])

    return curve


def _curve_integrals(curve, w: Weights, lo: float, hi: float, power_end: bool, rel_tol: float) -> MeasurePair:
    q = w.alpha + 2.0

    def per(phi):
        p, dp, n = curve(phi)
        return n**w.beta * np.hypot(dp[0], dp[1])

    def vol(phi):
        p, dp, n = curve(phi)
        return n**w.alpha * (p[0] * dp[1] - p[1] * dp[0]) / q

    if power_end:
        P = integrate_power_end(per, lo, hi, w.beta, rel_tol, DEFAULT_ABS_TOL).value
        V = integrate_power_end(vol, lo, hi, w.alpha + 2.0, rel_tol, DEFAULT_ABS_TOL).value
    else:
        P = integrate(per, lo, hi, rel_tol, DEFAULT_ABS_TOL).value
        V = integrate(vol, lo, hi, rel_tol, DEFAULT_ABS_TOL).value
    return MeasurePair(V, P)


def _measure_offcenter(shape: OffCenterBall, w: Weights, rel_tol: float) -> MeasurePair:
    # symmetric about the x-axis: integrate the upper half, which for the
    # tangent ball starts at the origin
    half = _curve_integrals(_offcenter_curve(shape), w, 0.0, math.pi, shape.d == shape.r, rel_tol)
    # clockwise orientation flips the sign of p x p'
    return MeasurePair(-2.0 * half.volume, 2.0 * half.perimeter)


# Cap-symmetric sets.

def _integrate_ends(F, a: float, b: float, left: EndKind, right: EndKind, origin_exp: float, rel_tol: float) -> float:
    mid = 0.5 * (a + b)
    total = 0.0
    if left == "origin":
        total += integrate_power_end(F, a, mid, origin_exp, rel_tol, DEFAULT_ABS_TOL).value
    elif left == "sqrt":
        h = mid - a
        total += integrate(lambda s: F(a + h * s * s) * (2.0 * h * s), 0.0, 1.0, rel_tol, DEFAULT_ABS_TOL).value
    else:
        total += integrate(F, a, mid, rel_tol, DEFAULT_ABS_TOL).value
    if right == "sqrt":
        h = b - mid
        total += integrate(lambda s: F(b - h * s * s) * (2.0 * h * s), 0.0, 1.0, rel_tol, DEFAULT_ABS_TOL).value
    else:
        total += integrate(F, mid, b, rel_tol, DEFAULT_ABS_TOL).value
    return total


def _measure_polar(shape: PolarGraph, w: Weights, rel_tol: float) -> MeasurePair:
    def per(t):
        return np.sqrt(1.0 + (t * shape.dtheta(t)) ** 2) * t**w.beta

    def vol(t):
        return shape.theta(t) * t ** (w.alpha + 1.0)

    P = 2.0 * _integrate_ends(per, shape.a, shape.b, shape.left, shape.right, w.beta, rel_tol)
    V = 2.0 * _integrate_ends(vol, shape.a, shape.b, shape.left, shape.right, w.alpha + 1.0, rel_tol)
    return MeasurePair(V, P)


def competitor_theta(tau, b: float, w: Weights):
    """Polar half-angle of the competitor: the two-branch arcsin form of arccos((tau/b)^gamma)/gamma."""
    g = w.gamma
    if not 0 < g < 1:
        raise ValueError("need 0 < gamma < 1")
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0) or np.any(tau > b):
        raise ValueError("tau must lie in [0, b]")
    s = (tau / b) ** g
    v = np.arcsin(np.clip(2.0 * s * np.sqrt(np.clip(1.0 - s * s, 0.0, None)), -1.0, 1.0))
    out = np.where(s * s <= 0.5, math.pi - v, v) / (2.0 * g)
    return float(out) if out.ndim == 0 else out


def competitor_dtheta(tau, b: float, w: Weights):
    tau = np.asarray(tau, dtype=float)
    s = (tau / b) ** w.gamma
    return -s / (tau * np.sqrt((1.0 - s) * (1.0 + s)))


def competitor_as_polar(shape: CompetitorE) -> PolarGraph:
    b, wt = shape.b, shape.weights
    return PolarGraph(0.0, b, lambda t: competitor_theta(t, b, wt), lambda t: competitor_dtheta(t, b, wt),
                      "origin", "sqrt")


def competitor_closed_form(b: float, w: Weights) -> MeasurePair:
    """Closed-form measures of the competitor built from the same weights w."""
    g = w.gamma
    x = (w.beta + 1.0) / (2.0 * g)
    B = beta_fn(x, 0.5)
    return MeasurePair(b ** (w.alpha + 2.0) * (2 * x / (2 * x + 1) ** 2) * B / g**2, b ** (w.beta + 1.0) * B / g)


def offcenter_as_polar(d: float, r: float) -> PolarGraph:
    """The disc centred at (d, 0) with d > r written as a cap-symmetric set."""
    if not d > r > 0:
        raise ValueError("need d > r > 0 (origin outside the disc)")

    def theta(t):
        c = (t * t + d * d - r * r) / (2 * d * t)
        return np.arccos(np.clip(c, -1.0, 1.0))

    def dtheta(t):
        c = (t * t + d * d - r * r) / (2 * d * t)
        dc = (t * t - d * d + r * r) / (2 * d * t * t)
        return -dc / np.sqrt(np.clip((1 - c) * (1 + c), 1e-300, None))

    return PolarGraph(d - r, d + r, theta, dtheta, "sqrt", "sqrt")


def perturbed_polar(d: float, r: float, eps: tuple[float, ...]) -> PolarGraph:
    """offcenter_as_polar with theta multiplied by 1 + sum_k eps_k cos(k pi s), s = (tau-a)/(b-a)."""
    base = offcenter_as_polar(d, r)
    a, b = base.a, base.b
    k = np.arange(1, len(eps) + 1, dtype=float)
    e = np.asarray(eps, dtype=float)

    def factor(t):
        s = (np.asarray(t, dtype=float) - a) / (b - a)
        return 1.0 + np.cos(np.multiply.outer(s, k) * math.pi) @ e

    def dfactor(t):
        s = (np.asarray(t, dtype=float) - a) / (b - a)
        return -(np.sin(np.multiply.outer(s, k) * math.pi) @ (k * e)) * math.pi / (b - a)

    def theta(t):
        return np.minimum(base.theta(t) * factor(t), math.pi)

    def dtheta(t):
        return base.dtheta(t) * factor(t) + base.theta(t) * dfactor(t)

    return PolarGraph(a, b, theta, dtheta, "sqrt", "sqrt")


def measure(shape: Shape, w: Weights, rel_tol: float = DEFAULT_REL_TOL) -> MeasurePair:
    """Weighted volume and perimeter of ``shape`` for the densities of ``w``."""
    _check_weights(w)
    if isinstance(shape, CenteredBall):
        return MeasurePair(float(_ball_volume(shape.r, w)), TWO_PI * shape.r ** (w.beta + 1.0))
    if isinstance(shape, CenteredAnnuliUnion):
        r = np.asarray(shape.radii)
        signs = np.where(np.arange(len(r)) % 2 == 0, 1.0, -1.0)
        return MeasurePair(float(np.sum(signs * _ball_volume(r, w))), float(TWO_PI * np.sum(r ** (w.beta + 1.0))))
    if isinstance(shape, OffCenterBall):
        return _measure_offcenter(shape, w, rel_tol)
    if isinstance(shape, FourierStar):
        return _curve_integrals(_star_curve(shape), w, 0.0, TWO_PI, False, rel_tol)
    if isinstance(shape, PolarGraph):
        return _measure_polar(shape, w, rel_tol)
    if isinstance(shape, CompetitorE):
        return _measure_polar(competitor_as_polar(shape), w, rel_tol)
    raise TypeError(f"unknown shape {shape!r}")


def scale_shape(shape: Shape, s: float) -> Shape:
    """Image of ``shape`` under x -> s x."""
    if not s > 0:
        raise ValueError("scale must be positive")
    if isinstance(shape, CenteredBall):
        return CenteredBall(shape.r * s)
    if isinstance(shape, CenteredAnnuliUnion):
        return CenteredAnnuliUnion(tuple(r * s for r in shape.radii))
    if isinstance(shape, OffCenterBall):
        return OffCenterBall(shape.d * s, shape.r * s)
    if isinstance(shape, FourierStar):
        return FourierStar((shape.center[0] * s, shape.center[1] * s), shape.r0 * s, shape.eps)
    if isinstance(shape, CompetitorE):
        return replace(shape, b=shape.b * s)
    if isinstance(shape, PolarGraph):
        th, dth = shape.theta, shape.dtheta
        return PolarGraph(shape.a * s, shape.b * s, lambda t: th(t / s), lambda t: dth(t / s) / s,
                          shape.left, shape.right)
    raise TypeError(f"unknown shape {shape!r}")


def ratio_from_measures(m: MeasurePair, w: Weights) -> float:
    if not m.volume > 0:
        raise ValueError("isoperimetric ratio needs positive volume")
    return math.exp((w.alpha + 2.0) * math.log(m.perimeter) - (w.beta + 1.0) * math.log(m.volume))


def iso_ratio(shape: Shape, w: Weights, rel_tol: float = DEFAULT_REL_TOL) -> float:
    """P^(alpha+2) / V^(beta+1), invariant under dilation."""
    return ratio_from_measures(measure(shape, w, rel_tol), w)


def ball_ratio(w: Weights) -> float:
    """(2 pi)^gamma (alpha+2)^(beta+1), the ratio of every centred ball."""
    return TWO_PI**w.gamma * (w.alpha + 2.0) ** (w.beta + 1.0)


def deficit(shape: Shape, w: Weights, rel_tol: float = DEFAULT_REL_TOL) -> float:
    return iso_ratio(shape, w, rel_tol) - ball_ratio(w)


def desired_gap(w: Weights, tol: float = 1e-12) -> float:
    """gamma^-1 (1 + 1/(2x))^(2x) B(x, 1/2) - 2 pi.

    Positive exactly when the competitor loses to the centred ball.
    """
    g = w.gamma
    if not 0.5 <= g < 1.0:
        raise ValueError("need gamma in [1/2, 1)")
    flags = classify(w, tol)
    if not flags.in_P or flags.in_P_minus:
        raise ValueError(f"{w} must lie in the region minus the alpha = 2 beta segment")
    x = (w.beta + 1.0) / (2.0 * g)
    return (1.0 + 0.5 / x) ** (2 * x) * beta_fn(x, 0.5) / g - TWO_PI


def competitor_chain(w: Weights) -> tuple[float, float]:
    """(desired_gap(w), W(x) - 2 pi); the first dominates the second, which is >= 0."""
    x = (w.beta + 1.0) / (2.0 * w.gamma)
    return desired_gap(w), cap_W(x) - TWO_PI


def morgan_map(point, beta: float):
    """x -> |x|^beta x / (beta + 1)."""
    if not -1 < beta < 0:
        raise ValueError("need -1 < beta < 0")
    p = np.asarray(point, dtype=float)
    n = np.linalg.norm(p, axis=0)
    if np.any(n == 0):
        raise ValueError("the map is not defined at the origin")
    return n**beta * p / (beta + 1.0)


def _morgan_differential(p, v, n, beta):
    # d Phi_p v = |p|^beta / (beta+1) (v + beta (p.v) p / |p|^2)
    dot = (p[0] * v[0] + p[1] * v[1]) / (n * n)
    scale = n**beta / (beta + 1.0)
    return (scale * (v[0] + beta * dot * p[0]), scale * (v[1] + beta * dot * p[1]))


def pushforward_check(shape: Shape, beta: float, rel_tol: float = DEFAULT_REL_TOL) -> tuple[float, float]:
    """(V_alpha(E) - (beta+1) V_0(Phi(E)), P_beta(E) - (beta+1) P_0(Phi(E))) with alpha = 2 beta.

    The image set is measured through its parametrized boundary Phi(p(phi)).
    """
    if not -1 < beta < 0:
        raise ValueError("need -1 < beta < 0")
    w = Weights(2.0 * beta, beta)
    if isinstance(shape, (CenteredBall, OffCenterBall)):
        ball = OffCenterBall(0.0, shape.r) if isinstance(shape, CenteredBall) else shape
        curve, lo, hi, sign, fold, sing = _offcenter_curve(ball), 0.0, math.pi, -1.0, 2.0, ball.d == ball.r
    elif isinstance(shape, FourierStar):
        curve, lo, hi, sign, fold, sing = _star_curve(shape), 0.0, TWO_PI, 1.0, 1.0, False
    else:
        raise TypeError("pushforward_check supports balls and Fourier stars")

    def image(phi):
        p, dp, n = curve(phi)
        q = (n**beta * p[0] / (beta + 1.0), n**beta * p[1] / (beta + 1.0))
        dq = _morgan_differential(p, dp, n, beta)
        return q, dq, None

    def vol0(phi):
        q, dq, _ = image(phi)
        return 0.5 * (q[0] * dq[1] - q[1] * dq[0])

    def per0(phi):
        _, dq, _ = image(phi)
        return np.hypot(dq[0], dq[1])

    own = _curve_integrals(curve, w, lo, hi, sing, rel_tol)
    if sing:
        V0 = integrate_power_end(vol0, lo, hi, 2 * beta + 2, rel_tol, DEFAULT_ABS_TOL).value
        P0 = integrate_power_end(per0, lo, hi, beta, rel_tol, DEFAULT_ABS_TOL).value
    else:
        V0 = integrate(vol0, lo, hi, rel_tol, DEFAULT_ABS_TOL).value
        P0 = integrate(per0, lo, hi, rel_tol, DEFAULT_ABS_TOL).value
    vol_res = fold * sign * (own.volume - (beta + 1.0) * V0)
    per_slack = fold * (own.perimeter - (beta + 1.0) * P0)
    return vol_res, per_slack


def annuli_vs_ball(radii, w: Weights) -> float:
    """P_beta(union) - P_beta(centred ball of equal V_alpha), via J(t) = c t^((beta+1)/(alpha+2)).

    An odd-length list is read as annuli plus an innermost disc.
    """
    r = np.asarray(radii, dtype=float)
    if r.size == 0 or np.any(r <= 0) or np.any(np.diff(r) >= 0):
        raise ValueError("radii must be positive and strictly decreasing")
    _check_weights(w)
    q, p = w.alpha + 2.0, w.beta + 1.0
    const = (TWO_PI**w.gamma * q**p) ** (1.0 / q)

    def J(t):
        return const * t ** (p / q)

    t = _ball_volume(r, w)
    signs = np.where(np.arange(r.size) % 2 == 0, 1.0, -1.0)
    return float(np.sum(J(t)) - J(np.sum(signs * t)))


# Seeded random families for the verification sweep. Samples are plain
# dicts so reports can record them verbatim.

FAMILIES = ("offcenter", "tangent", "annuli", "perturbed")


def sample_params(family: str, rng: np.random.Generator, index: int) -> dict:
    """Parameters of one random member of ``family``.

    Perturbed samples alternate with ``index`` between Fourier stars about a
    slightly off-centre point and Fourier-perturbed cap-symmetric discs.
    """
    r = float(np.exp(rng.uniform(math.log(0.2), math.log(5.0))))
    if family == "offcenter":
        return {"kind": "offcenter", "d": float(rng.uniform(0.0, 0.999)) * r, "r": r}
    if family == "tangent":
        return {"kind": "offcenter", "d": r, "r": r}
    if family == "annuli":
        n = 2 * int(rng.integers(1, 5))
        radii = np.sort(rng.uniform(0.05, 1.0, n))[::-1] * r
        if np.any(np.diff(radii) >= 0):
            radii = r * np.linspace(1.0, 0.1, n)
        return {"kind": "annuli", "radii": [float(x) for x in radii]}
    if family == "perturbed":
        eps = [float(e) for e in rng.uniform(-0.2, 0.2, 4) * rng.uniform(0.0, 1.0)]
        if index % 2 == 0:
            d = float(rng.uniform(0.0, 0.15)) * r
            ang = float(rng.uniform(0.0, TWO_PI))
            return {"kind": "star", "center": [d * math.cos(ang), d * math.sin(ang)], "r0": r, "eps": eps}
        return {"kind": "perturbed_polar", "d": r * float(rng.uniform(1.05, 4.0)), "r": r,
                "eps": [e / 2 for e in eps]}
    raise ValueError(f"unknown family {family!r}")


def build_shape(desc: dict) -> Shape:
    kind = desc["kind"]
    if kind == "ball":
        return CenteredBall(desc["r"])
    if kind == "offcenter":
        return OffCenterBall(desc["d"], desc["r"])
    if kind == "annuli":
        return CenteredAnnuliUnion(tuple(desc["radii"]))
    if kind == "star":
        return FourierStar(tuple(desc["center"]), desc["r0"], tuple(desc["eps"]))
    if kind == "perturbed_polar":
        return perturbed_polar(desc["d"], desc["r"], tuple(desc["eps"]))
    raise ValueError(f"unknown shape kind {kind!r}")


def sample_shape(family: str, rng: np.random.Generator, index: int) -> Shape:
    return build_shape(sample_params(family, rng, index))
