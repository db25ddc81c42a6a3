"""Pointwise residuals of the operator family and of the named 2D equations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import Jet2, JetN, MapJet2
from .params import OperatorParams

__all__ = [
    "SingularGradientError",
    "EllipticityReport",
    "NAMED_FORMS",
    "coefficients",
    "discriminant",
    "l_residual",
    "l_residual_compact",
    "l_magnitude",
    "named_form_residual",
    "p_laplace_residual",
    "infinity_laplace_residual",
    "mss_residual",
    "ellipticity",
    "GRADIENT_LATTICE",
]


class SingularGradientError(ValueError):
    """The p-Laplacian is undefined at a critical point for p < 2."""


def coefficients(params: OperatorParams, ux: float, uy: float) -> tuple[float, float, float]:
    """Principal coefficients (A, B, C) with L = A u_xx + B u_xy + C u_yy."""
    g, e = params.gamma, params.epsilon
    ux2, uy2 = ux * ux, uy * uy
    a = 2.0 * e + (g + 1.0) * ux2 + (g - 1.0) * uy2
    b = 4.0 * ux * uy
    c = 2.0 * e + (g - 1.0) * ux2 + (g + 1.0) * uy2
    return a, b, c


def l_residual(params: OperatorParams, jet: Jet2) -> float:
    a, b, c = coefficients(params, jet.ux, jet.uy)
    return a * jet.uxx + b * jet.uxy + c * jet.uyy


def l_magnitude(params: OperatorParams, jet: Jet2) -> float:
    """Sum of the absolute values of the terms of L; the natural scale for relative errors."""
    a, b, c = coefficients(params, jet.ux, jet.uy)
    return abs(a * jet.uxx) + abs(b * jet.uxy) + abs(c * jet.uyy)


def _inner(jet: Jet2) -> float:
    # <D^2u Du, Du>
    return jet.ux * jet.ux * jet.uxx + 2.0 * jet.ux * jet.uy * jet.uxy + jet.uy * jet.uy * jet.uyy


def l_residual_compact(params: OperatorParams, jet: Jet2) -> float:
    """Same operator regrouped as (2eps + (gamma-1)|Du|^2) Lap u + 2 <D^2u Du, Du>."""
    s = 2.0 * params.epsilon + (params.gamma - 1.0) * jet.w
    return s * (jet.uxx + jet.uyy) + 2.0 * _inner(jet)


NAMED_FORMS = ("minimal-surface", "wrong-minimal-surface", "maximal-surface", "one-laplace-form")


def named_form_residual(form: str, jet: Jet2) -> float:
    ux, uy, uxx, uxy, uyy = jet.ux, jet.uy, jet.uxx, jet.uxy, jet.uyy
    ux2, uy2 = ux * ux, uy * uy
    if form == "minimal-surface":
        return (1.0 + uy2) * uxx - 2.0 * ux * uy * uxy + (1.0 + ux2) * uyy
    if form == "wrong-minimal-surface":
        return (1.0 + ux2) * uxx + 2.0 * ux * uy * uxy + (1.0 + uy2) * uyy
    if form == "maximal-surface":
        return (1.0 - uy2) * uxx + 2.0 * ux * uy * uxy + (1.0 - ux2) * uyy
    if form == "one-laplace-form":
        return uy2 * uxx - 2.0 * ux * uy * uxy + ux2 * uyy
    raise KeyError(f"unknown form {form!r}; known: {', '.join(NAMED_FORMS)}")


def p_laplace_residual(p: float, jet: Jet2) -> float:
    """Expanded div(|Du|^(p-2) Du) for a classical jet.

    At a critical point the value is 0 for p > 2 and Lap u for p = 2;
    p < 2 raises :class:`SingularGradientError`.
    """
    w = jet.w
    lap = jet.uxx + jet.uyy
    if p == 2:
        return lap
    if w == 0.0:
        if p > 2:
            return 0.0
        raise SingularGradientError(f"p={p} < 2 is singular where Du = 0")
    return w ** ((p - 2.0) / 2.0) * (lap + (p - 2.0) * _inner(jet) / w)


def infinity_laplace_residual(jet: JetN) -> float:
    g = jet.grad
    return float(g @ jet.hess @ g)


def mss_residual(mjet: MapJet2) -> np.ndarray:
    """Both components of (1+|f_y|^2) f_xx - 2 (f_x.f_y) f_xy + (1+|f_x|^2) f_yy."""
    fx, fy = mjet.f_x, mjet.f_y
    return (1.0 + fy @ fy) * mjet.f_xx - 2.0 * (fx @ fy) * mjet.f_xy + (1.0 + fx @ fx) * mjet.f_yy


GRADIENT_LATTICE = np.arange(-3.0, 3.0 + 0.125, 0.25)


def discriminant(params: OperatorParams, ux, uy):
    """4AC - B^2 of the principal part; positive means elliptic at that gradient."""
    a, b, c = coefficients(params, ux, uy)
    return 4.0 * a * c - b * b


@dataclass(frozen=True)
class EllipticityReport:
    elliptic: bool
    rule_source: str
    sampled_min_discriminant: float
    argmin_gradient: tuple[float, float]


def ellipticity(params: OperatorParams) -> EllipticityReport:
    """Classify by the analytic rule eps*gamma > 0 and |gamma| >= 1.

    The discriminant sample over :data:`GRADIENT_LATTICE` squared is reported
    as evidence.  Algebraically 4AC - B^2 = 4 s (s + 2w) with
    s = 2eps + (gamma-1) w, so the rule is the condition for positivity at
    every gradient.
    """
    gx, gy = np.meshgrid(GRADIENT_LATTICE, GRADIENT_LATTICE, indexing="ij")
    d = discriminant(params, gx, gy)
    k = np.unravel_index(int(np.argmin(d)), d.shape)
    elliptic = params.epsilon * params.gamma > 0 and abs(params.gamma) >= 1
    return EllipticityReport(
        elliptic=bool(elliptic),
        rule_source="eps*gamma > 0 and |gamma| >= 1",
        sampled_min_discriminant=float(d[k]),
        argmin_gradient=(float(gx[k]), float(gy[k])),
    )
