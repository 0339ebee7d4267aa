"""Weight exponents, their derived quantities and parameter-region tests.

The volume density is |x|^alpha and the perimeter density is |x|^beta.
Every other module takes a :class:`Weights` instance as its first argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class Weights:
    """Exponent pair (alpha, beta) of the volume and perimeter densities."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError(f"weights must be finite, got ({self.alpha}, {self.beta})")

    @property
    def gamma(self) -> float:
        return self.alpha - self.beta + 1.0


@dataclass(frozen=True)
class Derived:
    """gamma = alpha - beta + 1, zeta = (beta+1)/gamma and x = zeta/2.

    zeta and x are None when gamma == 0.
    """

    gamma: float
    zeta: Optional[float]
    x: Optional[float]


class RegionFlags(NamedTuple):
    in_P: bool
    in_P_plus: bool
    in_P_minus: bool
    in_Q: bool


class Assumptions(NamedTuple):
    A1: bool
    A2: bool
    A3: bool
    A4: bool


def derive(w: Weights) -> Derived:
    gamma = w.alpha - w.beta + 1.0
    if gamma == 0.0:
        return Derived(gamma, None, None)
    zeta = (w.beta + 1.0) / gamma
    return Derived(gamma, zeta, (w.beta + 1.0) / (2.0 * gamma))


def classify(w: Weights, tol: float = DEFAULT_TOL) -> RegionFlags:
    """Region membership.

    Strict inequalities are tested exactly. Non-strict ones and the two
    equality curves (alpha = 2 beta, alpha (beta+1) = beta^2) accept an
    absolute slack of ``tol``.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    a, b = w.alpha, w.beta
    gamma = a - b + 1.0
    curve = a * (b + 1.0) - b * b
    in_P = gamma > 0 and a <= 2 * b + tol and curve <= tol
    in_P_plus = a >= -tol and b >= -tol and abs(curve) <= tol
    in_P_minus = -2.0 < a <= tol and abs(a - 2 * b) <= tol
    if b <= 0:
        in_Q = a > -2.0 and a <= 2 * b + tol
    else:
        in_Q = a > -2.0 and a < 2 * b
    return RegionFlags(bool(in_P), bool(in_P_plus), bool(in_P_minus), bool(in_Q))


def standing_assumptions(w: Weights) -> Assumptions:
    """Integrability and growth conditions on t^alpha, t^beta and t^(2 beta - alpha)."""
    a, b = w.alpha, w.beta
    return Assumptions(a > -2.0, a >= -2.0, b > -1.0, 2 * b - a > 0)


def hyperbola_coords(w: Weights) -> tuple[float, float]:
    """Affine coordinates in which the boundary curve of the region is X^2 - Y^2 = 1."""
    return (w.alpha + 2.0) / 2.0, (2.0 * w.beta - w.alpha) / 2.0


def from_hyperbola(X: float, Y: float) -> Weights:
    return Weights(2.0 * X - 2.0, Y + X - 1.0)


def zeta_line(zeta: float, beta: float) -> float:
    """alpha on the line of constant zeta through (-2, -1)."""
    return (1.0 + 1.0 / zeta) * beta + 1.0 / zeta - 1.0


def pplus_on_line(zeta: float) -> Weights:
    """The point where the constant-zeta line meets alpha (beta+1) = beta^2."""
    if not zeta >= 1.0:
        raise ValueError(f"zeta must be >= 1, got {zeta}")
    beta = math.sqrt(zeta) - 1.0
    return Weights(zeta_line(zeta, beta), beta)


def sample_P(n_zeta: int, n_beta: int, zeta_max: float = 16.0) -> list[Weights]:
    """Grid over the region in (zeta, beta) coordinates, origin excluded.

    Each constant-zeta line meets the region in beta in (-1, sqrt(zeta) - 1];
    the grid is uniform in the fraction of that segment and includes its
    upper end (the alpha (beta+1) = beta^2 curve). zeta = 1 gives the
    alpha = 2 beta segment.
    """
    out = []
    for i in range(n_zeta):
        zeta = zeta_max ** (i / max(n_zeta - 1, 1))
        top = math.sqrt(zeta) - 1.0
        for j in range(n_beta):
            frac = (j + 1) / n_beta
            beta = -1.0 + (top + 1.0) * frac
            if i == 0 and j == n_beta - 1:
                beta = -1.0 + (top + 1.0) * (1.0 - 0.5 / n_beta)
            out.append(Weights(zeta_line(zeta, beta), beta))
    return out
