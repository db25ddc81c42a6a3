"""Variational layer: densities F(|Du|^2), their Euler-Lagrange residual and the
Nitsche divergence test on the associated integral."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .fields import Jet2
from .params import OperatorParams

__all__ = [
    "InadmissibleParamsError",
    "PoleError",
    "NoFinitePreimageError",
    "VariationalDensity",
    "NitscheReport",
    "density",
    "lambda_value",
    "nitsche_integrand",
    "nitsche_integrand_reduced",
    "nitsche_antiderivative",
    "tail_coefficient",
    "nitsche_verdict",
    "el_residual",
    "PExponent",
    "gamma_to_p",
    "p_to_gamma",
    "adaptive_simpson",
    "CUTOFFS",
]

POWER = "power"
EXPONENTIAL = "exponential"
P_POWER = "p-power"

CUTOFFS = (10.0, 1e2, 1e3, 1e4)


class InadmissibleParamsError(ValueError):
    """No density is derived for these (gamma, epsilon)."""


class PoleError(ZeroDivisionError):
    pass


class NoFinitePreimageError(ValueError):
    """p = 2 corresponds to gamma -> infinity."""


@dataclass(frozen=True)
class VariationalDensity:
    """F(w) for w = |Du|^2 together with its exact first two derivatives."""

    params: OperatorParams
    case: str
    exponent: float | None = None
    c_p: float | None = None

    def _base(self, w):
        g, e = self.params.gamma, self.params.epsilon
        return 2.0 * abs(e) + abs(g - 1.0) * w

    def F(self, w: float) -> float:
        if self.case == EXPONENTIAL:
            return math.exp(w / (2.0 * self.params.epsilon))
        return self._base(w) ** self.exponent

    def dF(self, w: float) -> float:
        if self.case == EXPONENTIAL:
            return self.F(w) / (2.0 * self.params.epsilon)
        k, m = self.exponent, abs(self.params.gamma - 1.0)
        return k * m * self._base(w) ** (k - 1.0)

    def d2F(self, w: float) -> float:
        if self.case == EXPONENTIAL:
            e = self.params.epsilon
            return self.F(w) / (4.0 * e * e)
        k, m = self.exponent, abs(self.params.gamma - 1.0)
        return k * (k - 1.0) * m * m * self._base(w) ** (k - 2.0)

    @property
    def p(self) -> float | None:
        return gamma_to_p(self.params.gamma).value if self.case == P_POWER else None


def density(params: OperatorParams) -> VariationalDensity:
    """Density whose Euler-Lagrange equation is proportional to L.

    Three families are admissible: the power case (gamma > 1, eps > 0) or
    (gamma <= -1, eps < 0); the exponential case gamma = 1, eps > 0; and the
    eps = 0 limit with |gamma| > 1, where F(w) = c(p)/p * w^(p/2) with
    c(p) = p |gamma-1|^(gamma/(gamma-1)).
    """
    g, e = params.gamma, params.epsilon
    if (g > 1 and e > 0) or (g <= -1 and e < 0):
        return VariationalDensity(params, POWER, exponent=g / (g - 1.0))
    if g == 1 and e > 0:
        return VariationalDensity(params, EXPONENTIAL)
    if e == 0 and abs(g) > 1:
        k = g / (g - 1.0)
        p = gamma_to_p(g).value
        return VariationalDensity(params, P_POWER, exponent=k, c_p=p * abs(g - 1.0) ** k)
    raise InadmissibleParamsError(f"no density for gamma={g}, epsilon={e}")


def _lambda_denominator(params: OperatorParams, w: float) -> float:
    return 2.0 * params.epsilon + (params.gamma - 1.0) * w


def lambda_value(params: OperatorParams, w: float) -> float:
    """lambda(w) = 2 F''/F' = 2 / (2 eps + (gamma-1) w)."""
    d = _lambda_denominator(params, w)
    if d == 0.0:
        raise PoleError(f"lambda has a pole at w={w} for {params}")
    return 2.0 / d


def nitsche_integrand(params: OperatorParams, w: float) -> float:
    """(1 + w lam) / (2 + w lam) / w."""
    wl = w * lambda_value(params, w)
    if 2.0 + wl == 0.0:
        raise PoleError(f"integrand has a pole at w={w} for {params}")
    return (1.0 + wl) / (2.0 + wl) / w


def nitsche_integrand_reduced(params: OperatorParams, w: float) -> float:
    """The same integrand after partial fractions: (1/(2eps + gamma w) + 1/w) / 2."""
    d = 2.0 * params.epsilon + params.gamma * w
    if d == 0.0:
        raise PoleError(f"integrand has a pole at w={w} for {params}")
    return 0.5 * (1.0 / d + 1.0 / w)


def nitsche_antiderivative(params: OperatorParams, w: float) -> float:
    """An antiderivative of the reduced integrand."""
    g, e = params.gamma, params.epsilon
    if g == 0.0:
        return w / (4.0 * e) + 0.5 * math.log(w)
    return 0.5 * (math.log(abs(2.0 * e + g * w)) / g + math.log(w))


def tail_coefficient(params: OperatorParams) -> float:
    """lim w * integrand(w) as w -> infinity, i.e. (gamma+1)/(2 gamma)."""
    g = params.gamma
    if g == 0.0:
        # integrand ~ 1/(4 eps) + 1/(2w): not integrable, w*integrand unbounded
        return math.inf
    return (g + 1.0) / (2.0 * g) + 0.0  # -0.0 -> 0.0


def adaptive_simpson(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-9, max_depth: int = 60
) -> float:
    """Interval-halving Simpson rule with Richardson-corrected panels.

    A panel is accepted once its halves agree with the whole to ``15*tol``.
    """
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) * (fa + 4.0 * fm + fb) / 6.0
    total = 0.0
    stack = [(a, b, fa, fm, fb, whole, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, s, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        fl, fr = f(0.5 * (lo + mid)), f(0.5 * (mid + hi))
        left = (mid - lo) * (flo + 4.0 * fl + fmid) / 6.0
        right = (hi - mid) * (fmid + 4.0 * fr + fhi) / 6.0
        delta = left + right - s
        if abs(delta) <= 15.0 * tol or depth >= max_depth:
            total += left + right + delta / 15.0
        else:
            stack.append((mid, hi, fmid, fr, fhi, right, depth + 1))
            stack.append((lo, mid, flo, fl, fmid, left, depth + 1))
    return total


@dataclass(frozen=True)
class NitscheReport:
    params: OperatorParams
    verdict: str
    tail_coefficient: float
    partial_integrals: list[tuple[float, float]]
    bernstein_conclusion: str
    log_slope: float
    corroborated: bool
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "gamma": self.params.gamma,
            "epsilon": self.params.epsilon,
            "verdict": self.verdict,
            "tail_coefficient": self.tail_coefficient,
            "partial_integrals": [[W, v] for W, v in self.partial_integrals],
            "log_slope": self.log_slope,
            "corroborated": self.corroborated,
            "bernstein_conclusion": self.bernstein_conclusion,
            "notes": list(self.notes),
        }


def partial_integrals(params: OperatorParams, cutoffs=CUTOFFS, tol: float = 1e-9):
    out, acc, lo = [], 0.0, 1.0
    f = lambda w: nitsche_integrand(params, w)  # noqa: E731
    for W in cutoffs:
        acc += adaptive_simpson(f, lo, W, tol=tol)
        out.append((W, acc))
        lo = W
    return out


def nitsche_verdict(params: OperatorParams, ratio_threshold: float = 2.0) -> NitscheReport:
    """Decide divergence of the Nitsche integral from its tail coefficient.

    Quadrature partials on :data:`CUTOFFS` are attached as evidence only.
    The eps = 0 densities degenerate at w = 0 (the integral is not regular),
    so only the power and exponential families are accepted.
    """
    dens = density(params)
    if dens.case == P_POWER:
        raise InadmissibleParamsError(
            f"criterion needs a regular integrand; eps=0 density degenerates at w=0 ({params})"
        )
    tail = tail_coefficient(params)
    diverges = tail != 0.0
    parts = partial_integrals(params)
    values = [v for _, v in parts]
    increasing = all(b > a for a, b in zip(values, values[1:]))
    ratio = values[-1] / values[0]
    log_slope = (values[-1] - values[-2]) / math.log(parts[-1][0] / parts[-2][0])
    if diverges:
        corroborated = increasing and ratio > ratio_threshold and abs(log_slope - tail) < 0.05 * abs(tail) + 1e-3
    else:
        corroborated = increasing and ratio <= ratio_threshold and abs(log_slope) < 1e-3
    notes = []
    if not corroborated:
        notes.append("quadrature evidence does not match the symbolic tail; verdict unchanged")
    return NitscheReport(
        params=params,
        verdict="diverges" if diverges else "converges",
        tail_coefficient=tail,
        partial_integrals=parts,
        bernstein_conclusion="no-bernstein-property" if diverges else "criterion-silent",
        log_slope=log_slope,
        corroborated=corroborated,
        notes=notes,
    )


def el_residual(params: OperatorParams, jet: Jet2) -> float:
    """div(2 F'(|Du|^2) Du) expanded: 2F' Lap u + 4F'' <D^2u Du, Du>."""
    dens = density(params)
    w = jet.w
    inner = jet.ux * jet.ux * jet.uxx + 2.0 * jet.ux * jet.uy * jet.uxy + jet.uy * jet.uy * jet.uyy
    return 2.0 * dens.dF(w) * (jet.uxx + jet.uyy) + 4.0 * dens.d2F(w) * inner


@dataclass(frozen=True)
class PExponent:
    """Exponent p on the extended reals; ``exact`` is None only for p = +inf.

    Carrying the exact rational keeps the gamma <-> p substitution an exact
    round trip for every float input.
    """

    exact: Fraction | None

    @property
    def value(self) -> float:
        return math.inf if self.exact is None else float(self.exact)

    @property
    def is_infinite(self) -> bool:
        return self.exact is None

    def __float__(self) -> float:
        return self.value


def gamma_to_p(gamma: float) -> PExponent:
    """p = 2 gamma / (gamma - 1); gamma = 1 maps to +inf."""
    if gamma == 1.0:
        return PExponent(None)
    g = Fraction(gamma)
    return PExponent(2 * g / (g - 1))


def p_to_gamma(p: PExponent | float) -> float:
    """Inverse substitution gamma = p / (p - 2)."""
    if not isinstance(p, PExponent):
        p = PExponent(None) if p == math.inf else PExponent(Fraction(p))
    if p.exact is None:
        return 1.0
    if p.exact == 2:
        raise NoFinitePreimageError("p = 2 is the limit gamma -> +-infinity")
    return float(p.exact / (p.exact - 2))
