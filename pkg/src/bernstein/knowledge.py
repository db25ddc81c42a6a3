"""Bernstein-property verdicts for the operator family, encoded by hand.

The table records known results together with a short literature tag.  Where
a verdict is ``fails`` it names witnesses; the witnesses with an explicit
formula are checked numerically by :func:`verify_witness`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from . import fields as F
from .constructions import HOLOMORPHIC_KINDS, build_wrong_mse_solution, holomorphic_map, scale_field
from .operators import l_residual, mss_residual
from .params import OperatorParams, ScalingParams
from .variational import InadmissibleParamsError, nitsche_verdict

__all__ = [
    "BernsteinQuery",
    "BernsteinVerdict",
    "bernstein_verdict",
    "normalize_epsilon",
    "verify_witness",
    "knowledge_table",
    "sample_grid",
    "WITNESSES",
    "STATUSES",
]

STATUSES = ("holds", "fails", "conditional-holds", "open", "not-covered")


@dataclass(frozen=True)
class BernsteinQuery:
    params: OperatorParams
    dim: int = 2
    regularity: str = "C2"
    gradient_bound: Optional[float] = None
    codim: int = 1

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise ValueError(f"dimension must be >= 2, got {self.dim}")
        if self.codim < 1:
            raise ValueError(f"codimension must be >= 1, got {self.codim}")
        if self.regularity not in ("C2", "C4"):
            raise ValueError(f"regularity must be C2 or C4, got {self.regularity!r}")


@dataclass(frozen=True)
class BernsteinVerdict:
    status: str
    anchor: str
    witnesses: tuple[str, ...] = ()
    condition: str = ""

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fails" and not self.witnesses:
            raise ValueError("a failing verdict needs a witness")
        if not self.anchor:
            raise ValueError("every verdict carries an anchor")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witnesses"] = list(self.witnesses)
        return d


def normalize_epsilon(params: OperatorParams) -> tuple[OperatorParams, ScalingParams]:
    """Map (gamma, eps) to (gamma, sign eps) plus the scaling that transports
    solutions of the normalized problem back: a = sqrt|eps|, b = 1."""
    e = params.epsilon
    if e == 0.0:
        return params, ScalingParams(1.0, 1.0)
    return OperatorParams(params.gamma, math.copysign(1.0, e)), ScalingParams(math.sqrt(abs(e)), 1.0)


def sample_grid(n: int = 20, radius: float = 3.0) -> list[tuple[float, float]]:
    t = np.linspace(-radius, radius, n)
    return [(float(x), float(y)) for x in t for y in t]


def _field_residual_ok(field: F.ScalarField2, params: OperatorParams, points, tol: float) -> bool:
    _, scaling = normalize_epsilon(params)
    v = scale_field(field, scaling)
    return all(abs(l_residual(params, v.jet(x, y))) <= tol for x, y in points)


def _catalog_check(solution_id: str, radius: float = 3.0):
    def check(params: OperatorParams, tol: float = 1e-8) -> bool:
        f, _ = F.catalog(solution_id)
        return _field_residual_ok(f, params, sample_grid(20, radius), tol)

    return check


def _separable_check(params: OperatorParams, tol: float = 1e-8) -> bool:
    return _field_residual_ok(build_wrong_mse_solution(1.0), params, sample_grid(20, 10.0), tol)


def _holomorphic_check(kind: str, n: int | None):
    def check(params: OperatorParams, tol: float = 1e-8) -> bool:
        pts = sample_grid(10, 2.0)
        return all(np.max(np.abs(mss_residual(holomorphic_map(kind, F.Point2(x, y), n)))) <= tol for x, y in pts)

    return check


def _nitsche_check(params: OperatorParams, tol: float = 1e-8) -> bool:
    try:
        return nitsche_verdict(params).verdict == "diverges"
    except InadmissibleParamsError:
        return False


@dataclass(frozen=True)
class Witness:
    description: str
    # None marks a literature-only witness with nothing to evaluate
    check: Optional[Callable[..., bool]] = field(default=None, compare=False)

    @property
    def verifiable(self) -> bool:
        return self.check is not None


WITNESSES: dict[str, Witness] = {
    "quadratic-sum": Witness("u = x^2 + y^2", _catalog_check("quadratic-sum")),
    "exp-sum": Witness("u = exp(x + y)", _catalog_check("exp-sum")),
    "univariate-g": Witness("u = g(x) for any C^2 g (checked with g = sin)", _catalog_check("univariate-g")),
    "x-plus-h": Witness("u = x + h(y) for any C^2 h (checked with h = y^3)", _catalog_check("x-plus-h")),
    "separable-wrong-mse": Witness("u = g(x) + h(y) with (1+g'^2)g'' = c = -(1+h'^2)h''", _separable_check),
    "holomorphic-z2": Witness("f(z) = z^2 as a map R^2 -> R^2", _holomorphic_check(*HOLOMORPHIC_KINDS[1])),
    "holomorphic-exp": Witness("f(z) = exp(z) as a map R^2 -> R^2", _holomorphic_check(*HOLOMORPHIC_KINDS[4])),
    "nitsche-criterion": Witness("divergent Nitsche integral for the associated density", _nitsche_check),
    "bdgg-minimal-graph": Witness("entire non-affine minimal graph over R^n, n >= 8 (Bombieri-De Giorgi-Giusti)"),
    "lawson-osserman-cone": Witness("Lipschitz, non-analytic cone solution of the minimal surface system"),
}


def verify_witness(witness_id: str, params: OperatorParams, tol: float = 1e-8) -> Optional[bool]:
    """True/False for checkable witnesses, None for literature-only ones."""
    w = WITNESSES[witness_id]
    if w.check is None:
        return None
    return bool(w.check(params, tol))


_NOT_COVERED = "no statement for this parameter region"


def _minimal_surface_system(q: BernsteinQuery) -> BernsteinVerdict:
    anchor = "minimal surface system, codimension > 1"
    bound = q.gradient_bound
    if q.dim >= 4:
        return BernsteinVerdict(
            "fails",
            "Lawson-Osserman cone, codimension > 1, n >= 4",
            ("lawson-osserman-cone",),
            condition="bounded gradient does not imply linearity; the counterexample is Lipschitz, not analytic",
        )
    if bound is not None:
        return BernsteinVerdict("conditional-holds", anchor + ", bounded gradient, n <= 3", condition="bounded gradient")
    if q.dim == 2:
        return BernsteinVerdict("fails", anchor + ", holomorphic maps", ("holomorphic-z2", "holomorphic-exp"))
    return BernsteinVerdict("conditional-holds", anchor + ", bounded gradient, n <= 3", condition="bounded gradient")


def bernstein_verdict(q: BernsteinQuery) -> BernsteinVerdict:
    g, e = q.params.gamma, q.params.epsilon
    s = 0 if e == 0 else int(math.copysign(1, e))
    n = q.dim

    if q.codim > 1:
        if g == -1 and s < 0:
            return _minimal_surface_system(q)
        return BernsteinVerdict("not-covered", _NOT_COVERED)

    # minimal surface equation (eps < 0 rescales to eps = -1)
    if g == -1 and s < 0:
        if n == 2:
            return BernsteinVerdict("holds", "Bernstein: minimal surface equation over R^2")
        if n <= 7:
            return BernsteinVerdict("holds", "De Giorgi (n=3), Almgren (n=4), Simons (n<=7)")
        return BernsteinVerdict("fails", "Bombieri-De Giorgi-Giusti, n >= 8", ("bdgg-minimal-graph",))

    # maximal surface equation
    if g == -1 and s > 0:
        if q.gradient_bound is not None and q.gradient_bound < 1:
            return BernsteinVerdict(
                "conditional-holds", "Calabi; Cheng-Yau: maximal surface equation", condition="sup |Du| < 1"
            )
        if n == 2:
            return BernsteinVerdict("fails", "explicit family u = x + h(y)", ("x-plus-h",))
        return BernsteinVerdict("not-covered", _NOT_COVERED)

    # 1-Laplacian form
    if g == -1 and s == 0:
        if n == 2:
            return BernsteinVerdict("fails", "explicit solutions g(x) and exp(x + y)", ("univariate-g", "exp-sum"))
        return BernsteinVerdict("not-covered", _NOT_COVERED)

    # infinity-Laplacian
    if g == 1 and s == 0:
        if n == 2:
            return BernsteinVerdict("holds", "Aronsson: infinity-harmonic functions over R^2")
        if q.regularity == "C4":
            return BernsteinVerdict("holds", "Yu: C^4 infinity-harmonic functions over R^n")
        return BernsteinVerdict("open", "C^2 sufficiency for infinity-harmonic functions over R^n unresolved")

    if g == 1 and s < 0:
        return BernsteinVerdict("not-covered", "isentropic irrotational steady plane flow; no Bernstein statement")

    # p-harmonic limit
    if s == 0 and abs(g) > 1:
        return BernsteinVerdict(
            "open",
            "p-harmonic limit eps = 0, p = 2 gamma/(gamma-1)",
            condition="affine under suitable growth conditions (any dimension); C^2 case without growth unresolved",
        )

    if g == 0 and s == 0:
        if n == 2:
            return BernsteinVerdict("fails", "explicit solution x^2 + y^2", ("quadratic-sum",))
        return BernsteinVerdict("not-covered", _NOT_COVERED)

    # elliptic families covered by the Nitsche criterion
    if n == 2 and g == 1 and s > 0:
        return BernsteinVerdict(
            "fails",
            "separation ansatz; Nitsche-Nitsche divergence criterion",
            ("separable-wrong-mse", "nitsche-criterion"),
        )
    if n == 2 and ((g > 1 and s > 0) or (g < -1 and s < 0)):
        return BernsteinVerdict("fails", "Nitsche-Nitsche divergence criterion", ("nitsche-criterion",))

    return BernsteinVerdict("not-covered", _NOT_COVERED)


TABLE_GAMMAS = (-2.0, -1.0, 0.0, 1.0, 2.0)
TABLE_EPSILONS = (-1.0, 0.0, 1.0)
TABLE_DIMS = (2, 5, 8)


def knowledge_table() -> list[dict]:
    """Verdicts over the declared lattice as JSON-ready records."""
    rows = []
    for g in TABLE_GAMMAS:
        for e in TABLE_EPSILONS:
            for n in TABLE_DIMS:
                for reg in ("C2", "C4"):
                    v = bernstein_verdict(BernsteinQuery(OperatorParams(g, e), dim=n, regularity=reg))
                    rows.append(
                        {
                            "gamma": g,
                            "epsilon": e,
                            "dim": n,
                            "regularity": reg.lower(),
                            "status": v.status,
                            "anchor": v.anchor,
                            "witnesses": list(v.witnesses),
                            "condition": v.condition,
                        }
                    )
    return rows
