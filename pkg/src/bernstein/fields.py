"""Scalar and vector fields over the plane with exact second-order jets.

Every field knows its value, gradient and Hessian in closed form.  The
finite-difference jet in :func:`fd_jet` only exists to cross-check those
closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .params import OperatorParams

__all__ = [
    "FieldEvaluationError",
    "Point2",
    "Jet2",
    "MapJet2",
    "JetN",
    "Univariate",
    "ScalarField2",
    "Affine",
    "QuadraticSum",
    "ExpSum",
    "UnivariateG",
    "XPlusH",
    "SeparableField",
    "Scaled",
    "CustomJet",
    "jet_of",
    "fd_jet",
    "catalog",
    "CATALOG_IDS",
    "FD_STEP_FLOOR",
]

FD_STEP_FLOOR = 1e-8


class FieldEvaluationError(ValueError):
    """A field refused to evaluate at a point."""


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")


@dataclass(frozen=True)
class Jet2:
    """Value, gradient and (symmetric) Hessian of a scalar field at a point."""

    value: float
    ux: float
    uy: float
    uxx: float
    uxy: float
    uyy: float

    def __post_init__(self) -> None:
        for v in (self.value, self.ux, self.uy, self.uxx, self.uxy, self.uyy):
            if not math.isfinite(v):
                raise FieldEvaluationError(f"non-finite jet entry in {self}")

    @property
    def grad(self) -> tuple[float, float]:
        return (self.ux, self.uy)

    @property
    def hess(self) -> tuple[float, float, float]:
        return (self.uxx, self.uxy, self.uyy)

    @property
    def w(self) -> float:
        """Squared gradient norm |Du|^2."""
        return self.ux * self.ux + self.uy * self.uy

    def to_jetn(self) -> "JetN":
        return JetN(
            grad=np.array([self.ux, self.uy]),
            hess=np.array([[self.uxx, self.uxy], [self.uxy, self.uyy]]),
        )


@dataclass(frozen=True)
class MapJet2:
    """Jets of both components of a map f = (u, v) from the plane to the plane."""

    u: Jet2
    v: Jet2

    @property
    def f_x(self) -> np.ndarray:
        return np.array([self.u.ux, self.v.ux])

    @property
    def f_y(self) -> np.ndarray:
        return np.array([self.u.uy, self.v.uy])

    @property
    def f_xx(self) -> np.ndarray:
        return np.array([self.u.uxx, self.v.uxx])

    @property
    def f_xy(self) -> np.ndarray:
        return np.array([self.u.uxy, self.v.uxy])

    @property
    def f_yy(self) -> np.ndarray:
        return np.array([self.u.uyy, self.v.uyy])


@dataclass(frozen=True)
class JetN:
    """Gradient and Hessian of a scalar field over R^n."""

    grad: np.ndarray
    hess: np.ndarray

    def __post_init__(self) -> None:
        g = np.asarray(self.grad, dtype=float)
        h = np.asarray(self.hess, dtype=float)
        if g.ndim != 1 or g.size < 1:
            raise ValueError("gradient must be a non-empty vector")
        if h.shape != (g.size, g.size):
            raise ValueError(f"Hessian shape {h.shape} does not match n={g.size}")
        if not np.array_equal(h, h.T):
            raise ValueError("Hessian must be symmetric")
        object.__setattr__(self, "grad", g)
        object.__setattr__(self, "hess", h)

    @property
    def n(self) -> int:
        return self.grad.size


@dataclass(frozen=True)
class Univariate:
    """A smooth function of one variable given with its first two derivatives."""

    f: Callable[[float], float]
    df: Callable[[float], float]
    d2f: Callable[[float], float]


class ScalarField2:
    """Base class: subclasses implement :meth:`jet`; :meth:`value` defaults to it."""

    def jet(self, x: float, y: float) -> Jet2:
        raise NotImplementedError

    def value(self, x: float, y: float) -> float:
        return self.jet(x, y).value


@dataclass(frozen=True)
class Affine(ScalarField2):
    """u = a*x + b*y + c."""

    a: float
    b: float
    c: float

    def jet(self, x, y):
        return Jet2(self.a * x + self.b * y + self.c, self.a, self.b, 0.0, 0.0, 0.0)

    def value(self, x, y):
        return self.a * x + self.b * y + self.c


@dataclass(frozen=True)
class QuadraticSum(ScalarField2):
    """u = x^2 + y^2."""

    def jet(self, x, y):
        return Jet2(x * x + y * y, 2.0 * x, 2.0 * y, 2.0, 0.0, 2.0)

    def value(self, x, y):
        return x * x + y * y


@dataclass(frozen=True)
class ExpSum(ScalarField2):
    """u = exp(x + y), refused where |x + y| exceeds ``max_arg``."""

    max_arg: float = 30.0

    def _exp(self, x, y):
        s = x + y
        if abs(s) > self.max_arg:
            raise FieldEvaluationError(f"|x+y| = {abs(s)} exceeds guard {self.max_arg}")
        return math.exp(s)

    def jet(self, x, y):
        e = self._exp(x, y)
        return Jet2(e, e, e, e, e, e)

    def value(self, x, y):
        return self._exp(x, y)


@dataclass(frozen=True)
class UnivariateG(ScalarField2):
    """u = g(x)."""

    g: Univariate

    def jet(self, x, y):
        return Jet2(self.g.f(x), self.g.df(x), 0.0, self.g.d2f(x), 0.0, 0.0)

    def value(self, x, y):
        return self.g.f(x)


@dataclass(frozen=True)
class XPlusH(ScalarField2):
    """u = x + h(y)."""

    h: Univariate

    def jet(self, x, y):
        return Jet2(x + self.h.f(y), 1.0, self.h.df(y), 0.0, 0.0, self.h.d2f(y))

    def value(self, x, y):
        return x + self.h.f(y)


@dataclass(frozen=True)
class SeparableField(ScalarField2):
    """u = g(x) + h(y)."""

    g: Univariate
    h: Univariate

    def jet(self, x, y):
        return Jet2(
            self.g.f(x) + self.h.f(y),
            self.g.df(x),
            self.h.df(y),
            self.g.d2f(x),
            0.0,
            self.h.d2f(y),
        )

    def value(self, x, y):
        return self.g.f(x) + self.h.f(y)


@dataclass(frozen=True)
class Scaled(ScalarField2):
    """v(x, y) = a * u(b*x, b*y) with chain-rule jets."""

    inner: ScalarField2
    a: float
    b: float

    def jet(self, x, y):
        j = self.inner.jet(self.b * x, self.b * y)
        a, ab, ab2 = self.a, self.a * self.b, self.a * self.b * self.b
        return Jet2(a * j.value, ab * j.ux, ab * j.uy, ab2 * j.uxx, ab2 * j.uxy, ab2 * j.uyy)

    def value(self, x, y):
        return self.a * self.inner.value(self.b * x, self.b * y)


@dataclass(frozen=True)
class CustomJet(ScalarField2):
    """A field backed by a user callable ``provider(x, y) -> Jet2``.

    Any exception raised by the provider is re-raised as
    :class:`FieldEvaluationError`.
    """

    provider: Callable[[float, float], Jet2]
    name: str = field(default="custom")

    def jet(self, x, y):
        try:
            return self.provider(x, y)
        except FieldEvaluationError:
            raise
        except Exception as exc:  # provider refused the point
            raise FieldEvaluationError(f"{self.name} failed at ({x}, {y}): {exc}") from exc


def jet_of(f: ScalarField2, p: Point2) -> Jet2:
    return f.jet(p.x, p.y)


def fd_jet(f: ScalarField2, p: Point2, h: float, floor: float = FD_STEP_FLOOR) -> Jet2:
    """Central-difference jet built from value evaluations only.

    Second derivatives use the 3-point stencil, the mixed derivative the
    4-point corner stencil.  Steps below ``floor`` are refused since the
    Hessian error grows like eps/h^2.
    """
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    if h < floor:
        raise ValueError(f"step {h} below floor {floor}")
    x, y = p.x, p.y
    v = f.value
    c = v(x, y)
    e, w_ = v(x + h, y), v(x - h, y)
    n, s = v(x, y + h), v(x, y - h)
    ne, nw = v(x + h, y + h), v(x - h, y + h)
    se, sw = v(x + h, y - h), v(x - h, y - h)
    return Jet2(
        c,
        (e - w_) / (2 * h),
        (n - s) / (2 * h),
        (e - 2 * c + w_) / (h * h),
        (ne - nw - se + sw) / (4 * h * h),
        (n - 2 * c + s) / (h * h),
    )


_SIN = Univariate(math.sin, math.cos, lambda t: -math.sin(t))
_CUBE = Univariate(lambda t: t**3, lambda t: 3.0 * t * t, lambda t: 6.0 * t)

CATALOG_IDS = ("affine", "quadratic-sum", "exp-sum", "univariate-g", "x-plus-h")


def catalog(solution_id: str) -> tuple[ScalarField2, OperatorParams | None]:
    """Return an explicit solution and the parameters it solves.

    ``affine`` solves every member of the family and is returned with
    ``None`` in place of the parameters.  ``univariate-g`` uses g = sin and
    ``x-plus-h`` uses h(y) = y^3 as concrete members of their families.
    """
    if solution_id == "affine":
        return Affine(2.0, 3.0, 1.0), None
    if solution_id == "quadratic-sum":
        return QuadraticSum(), OperatorParams(0.0, 0.0)
    if solution_id == "exp-sum":
        return ExpSum(), OperatorParams(-1.0, 0.0)
    if solution_id == "univariate-g":
        return UnivariateG(_SIN), OperatorParams(-1.0, 0.0)
    if solution_id == "x-plus-h":
        return XPlusH(_CUBE), OperatorParams(-1.0, 1.0)
    raise KeyError(f"unknown catalog solution {solution_id!r}; known: {', '.join(CATALOG_IDS)}")
