"""Explicit entire non-linear solutions: separation of variables, the scaling
map between epsilon values, and holomorphic maps for the 2D->2D system."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .fields import Jet2, MapJet2, Point2, Scaled, ScalarField2, SeparableField, Univariate
from .params import OperatorParams, ScalingParams

__all__ = [
    "SeparableODE",
    "SeparableSolution",
    "reduce_separable",
    "solve_monotone_cubic",
    "build_wrong_mse_solution",
    "scale_field",
    "holomorphic_map",
    "HOLOMORPHIC_KINDS",
]


@dataclass(frozen=True)
class SeparableODE:
    """The identity P g'' + Q h'' = 0 obtained from u = g(x) + h(y).

    P = 2eps + (gamma+1) g'^2 + (gamma-1) h'^2 and
    Q = 2eps + (gamma-1) g'^2 + (gamma+1) h'^2.  When gamma = 1 each
    coefficient depends on one variable only and the identity splits into
    (eps + g'^2) g'' = c, (eps + h'^2) h'' = -c.
    """

    params: OperatorParams
    splits: bool
    degenerate_slopes: tuple[float, ...]

    def coefficients(self, gp: float, hp: float) -> tuple[float, float]:
        g, e = self.params.gamma, self.params.epsilon
        gp2, hp2 = gp * gp, hp * hp
        return (
            2.0 * e + (g + 1.0) * gp2 + (g - 1.0) * hp2,
            2.0 * e + (g - 1.0) * gp2 + (g + 1.0) * hp2,
        )

    def residual(self, gp: float, gpp: float, hp: float, hpp: float) -> float:
        p, q = self.coefficients(gp, hp)
        return p * gpp + q * hpp

    def split_sides(self, gp: float, gpp: float, hp: float, hpp: float) -> tuple[float, float]:
        """(eps + g'^2) g'' and (eps + h'^2) h''; they sum to zero on solutions."""
        if not self.splits:
            raise ValueError(f"no constant separation for {self.params}")
        e = self.params.epsilon
        return (e + gp * gp) * gpp, (e + hp * hp) * hpp


def reduce_separable(params: OperatorParams) -> SeparableODE:
    """Substitute u = g(x) + h(y) (so u_xy = 0) into L.

    ``degenerate_slopes`` lists the values of g' (equivalently h') at which
    the opposite coefficient vanishes for every h' (g').  That happens only
    for gamma = -1, eps > 0, at slopes +-sqrt(eps); with g' fixed there the
    remaining term forces g'' = 0, which gives the family u = x + h(y)
    for eps = 1.
    """
    g, e = params.gamma, params.epsilon
    slopes: tuple[float, ...] = ()
    if g == -1.0 and e > 0:
        r = math.sqrt(e)
        slopes = (-r, r)
    return SeparableODE(params=params, splits=(g == 1.0), degenerate_slopes=slopes)


def solve_monotone_cubic(s: float) -> float:
    """Unique real root t of t + t^3/3 = s.

    Closed form t = 2 sinh(asinh(3s/2)/3), polished by Newton on the cubic.
    """
    t = 2.0 * math.sinh(math.asinh(1.5 * s) / 3.0)
    for _ in range(4):
        f = t + t * t * t / 3.0 - s
        if abs(f) <= 1e-15 * max(1.0, abs(s)):
            break
        t -= f / (1.0 + t * t)
    return t


@dataclass(frozen=True)
class SeparableSolution:
    """u = g(x) + h(y) solving the wrong minimal surface equation.

    g' solves (1 + g'^2) g'' = c with g(0) = g'(0) = 0, so g' + g'^3/3 = c x
    and, integrating g' dx = g'(1 + g'^2)/c dg', g = (g'^2/2 + g'^4/4)/c.
    h is built the same way with -c, hence h = -g.
    """

    c: float

    def gp(self, x: float) -> float:
        return solve_monotone_cubic(self.c * x)

    def gpp(self, x: float) -> float:
        t = self.gp(x)
        return self.c / (1.0 + t * t)

    def g(self, x: float) -> float:
        if self.c == 0.0:
            return 0.0
        t2 = self.gp(x) ** 2
        return (0.5 * t2 + 0.25 * t2 * t2) / self.c

    def hp(self, y: float) -> float:
        return -self.gp(y)

    def hpp(self, y: float) -> float:
        return -self.gpp(y)

    def h(self, y: float) -> float:
        return -self.g(y)

    @property
    def is_linear(self) -> bool:
        return self.c == 0.0

    def as_field(self) -> SeparableField:
        return SeparableField(
            g=Univariate(self.g, self.gp, self.gpp),
            h=Univariate(self.h, self.hp, self.hpp),
        )


def build_wrong_mse_solution(c: float) -> ScalarField2:
    if not math.isfinite(c):
        raise ValueError(f"separation constant must be finite, got {c}")
    return SeparableSolution(float(c)).as_field()


def scale_field(field: ScalarField2, s: ScalingParams) -> ScalarField2:
    """v(x, y) = a u(bx, by).

    L_{gamma,eps}[v](x, y) = a^3 b^4 L_{gamma, eps/(a^2 b^2)}[u](bx, by), so a
    solution for eps' becomes a solution for eps = a^2 b^2 eps'.
    """
    if s.a == 1.0 and s.b == 1.0:
        return field
    return Scaled(field, s.a, s.b)


HOLOMORPHIC_KINDS = (("power", 1), ("power", 2), ("power", 3), ("power", 4), ("exponential", None))


def _holomorphic_derivatives(kind: str, n: int | None, z: complex) -> tuple[complex, complex, complex]:
    if kind == "power":
        if n not in (1, 2, 3, 4):
            raise ValueError(f"power must be in 1..4, got {n}")
        d2 = n * (n - 1) * z ** (n - 2) if n >= 2 else 0j
        return z**n, n * z ** (n - 1), d2
    if kind == "exponential":
        e = cmath.exp(z)
        return e, e, e
    raise KeyError(f"unknown holomorphic kind {kind!r}")


def holomorphic_map(kind: str, point: Point2, n: int | None = None) -> MapJet2:
    """Exact jets of (Re f, Im f) for f = z^n or f = e^z.

    With f' = a + ib, Cauchy-Riemann gives u_x = a, u_y = -b, v_x = b,
    v_y = a; the same pattern applied to f'' gives the Hessians.
    """
    z = complex(point.x, point.y)
    f, d1, d2 = _holomorphic_derivatives(kind, n, z)
    u = Jet2(f.real, d1.real, -d1.imag, d2.real, -d2.imag, -d2.real)
    v = Jet2(f.imag, d1.imag, d1.real, d2.imag, d2.real, -d2.imag)
    return MapJet2(u, v)
