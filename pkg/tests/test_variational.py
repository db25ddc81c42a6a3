import math

import numpy as np
import pytest
import sympy as sp
from scipy.integrate import quad

from bernstein import variational as V
from bernstein.fields import Jet2
from bernstein.operators import l_residual
from bernstein.params import OperatorParams as P

from conftest import admissible_lattice, random_jets, rel_err

W = sp.Symbol("w", positive=True)


def sympy_density(p: P):
    """Independent symbolic F for the three admissible families."""
    g, e = sp.nsimplify(p.gamma), sp.nsimplify(p.epsilon)
    if g == 1:
        return sp.exp(W / (2 * e))
    return (2 * abs(e) + abs(g - 1) * W) ** (g / (g - 1))


def test_density_examples():
    d = V.density(P(1, 1))
    assert d.case == "exponential"
    assert d.F(0.0) == 1.0
    assert d.F(2.0) == pytest.approx(math.e)
    assert V.density(P(2, 1)).F(2.0) == 16.0
    assert V.density(P(-1, -1)).F(1.0) == pytest.approx(2.0, rel=1e-15)


@pytest.mark.parametrize("g,e", [(1, 0), (1, -1), (0.5, 1), (2, -1), (-2, 1), (0, 0), (-1, 0), (0.5, 0)])
def test_density_rejects_inadmissible(g, e):
    with pytest.raises(V.InadmissibleParamsError):
        V.density(P(g, e))


def test_lambda_examples():
    assert V.lambda_value(P(-1, -1), 1.0) == -0.5
    assert V.lambda_value(P(1, 1), 37.0) == 1.0
    assert V.lambda_value(P(2, 1), 0.0) == 1.0
    with pytest.raises(V.PoleError):
        V.lambda_value(P(-1, 1), 1.0)


@pytest.mark.parametrize("p", admissible_lattice(), ids=str)
def test_lambda_matches_symbolic_density(p):
    F = sympy_density(p)
    lam = sp.lambdify(W, 2 * sp.diff(F, W, 2) / sp.diff(F, W))
    d = V.density(p)
    for w in np.logspace(-1, 2, 25):
        assert V.lambda_value(p, w) == pytest.approx(float(lam(w)), rel=1e-8)
        assert 2 * d.d2F(w) / d.dF(w) == pytest.approx(V.lambda_value(p, w), rel=1e-8)
        assert d.F(w) == pytest.approx(float(F.subs(W, w)), rel=1e-12)
        assert d.dF(w) == pytest.approx(float(sp.diff(F, W).subs(W, w)), rel=1e-12)


@pytest.mark.parametrize("g", [-3.0, -2.0, -1.5, 1.5, 2.0, 3.0])
def test_p_power_density_shape(g):
    d = V.density(P(g, 0))
    p = V.gamma_to_p(g).value
    assert d.c_p == pytest.approx(p * abs(g - 1) ** (g / (g - 1)), rel=1e-15)
    for w in (0.5, 1.0, 2.0, 10.0):
        assert d.F(w) == pytest.approx(d.c_p / p * w ** (p / 2), rel=1e-12)


def test_integrand_examples():
    assert V.nitsche_integrand(P(1, 1), 1.0) == pytest.approx(2 / 3, rel=1e-15)
    for w in (1.0, 10.0, 100.0):
        assert V.nitsche_integrand(P(2, 1), w) == pytest.approx(V.nitsche_integrand_reduced(P(2, 1), w), rel=1e-12)
    # (-1,-1): integrand = 1/(w(w+2)) by partial fractions, so w^2 * integrand -> 1
    for w in (1e3, 1e5, 1e7):
        assert w * w * V.nitsche_integrand(P(-1, -1), w) == pytest.approx(w / (w + 2), rel=1e-9)


@pytest.mark.parametrize("p", [P(1, 1), P(2, 1), P(3, 1), P(-2, -1), P(-3, -1), P(-1, -1), P(1.5, 0.5)], ids=str)
def test_quadrature_matches_antiderivative(p):
    parts = dict(V.partial_integrals(p, cutoffs=(10.0, 100.0, 1000.0)))
    for W_ in (10.0, 100.0, 1000.0):
        exact = V.nitsche_antiderivative(p, W_) - V.nitsche_antiderivative(p, 1.0)
        assert parts[W_] == pytest.approx(exact, abs=1e-6)


def test_adaptive_simpson_against_scipy():
    f = lambda t: math.sin(t) ** 2 / (1 + t)  # noqa: E731
    ref, _ = quad(f, 0.0, 20.0, epsabs=1e-13, limit=500)
    assert V.adaptive_simpson(f, 0.0, 20.0, tol=1e-12) == pytest.approx(ref, abs=1e-10)


def test_tail_coefficients():
    assert V.tail_coefficient(P(2, 1)) == 0.75
    assert V.tail_coefficient(P(1, 1)) == 1.0
    assert V.tail_coefficient(P(-1, -1)) == 0.0


@pytest.mark.parametrize(
    "p,verdict",
    [(P(2, 1), "diverges"), (P(1, 1), "diverges"), (P(-1, -1), "converges"), (P(-1.5, -2), "diverges")],
    ids=str,
)
def test_verdicts(p, verdict):
    r = V.nitsche_verdict(p)
    assert r.verdict == verdict
    assert r.corroborated
    vals = [v for _, v in r.partial_integrals]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    if verdict == "diverges":
        assert r.bernstein_conclusion == "no-bernstein-property"
        assert vals[-1] / vals[0] > 2.0
    else:
        assert r.bernstein_conclusion == "criterion-silent"
        assert r.tail_coefficient == 0.0


def test_verdict_rejects_degenerate_and_inadmissible():
    with pytest.raises(V.InadmissibleParamsError):
        V.nitsche_verdict(P(2, 0))
    with pytest.raises(V.InadmissibleParamsError):
        V.nitsche_verdict(P(0.5, 1))


def test_el_residual_affine_is_zero():
    for p in admissible_lattice():
        assert V.el_residual(p, Jet2(1.0, 0.3, -2.0, 0.0, 0.0, 0.0)) == 0.0


@pytest.mark.parametrize("p", admissible_lattice(), ids=str)
def test_el_bridge(p):
    d = V.density(p)
    for j in random_jets(200, seed=3):
        s = 2 * p.epsilon + (p.gamma - 1) * j.w
        lhs = V.el_residual(p, j) * s
        rhs = 2 * d.dF(j.w) * l_residual(p, j)
        scale = 2 * abs(d.dF(j.w)) * (abs(s) * (abs(j.uxx) + abs(j.uyy)) + 2 * j.w * (abs(j.uxx) + abs(j.uxy) + abs(j.uyy)))
        assert rel_err(lhs, rhs, scale) <= 1e-10


@pytest.mark.parametrize("p", [P(2, 1), P(1, 1), P(-2, -1), P(3, 0)], ids=str)
def test_el_residual_against_symbolic_divergence(p):
    x, y = sp.symbols("x y")
    u = x**3 / 3 + x * y**2 - y / 2 + x**2 + 0.25 * y**3
    F = sympy_density(p)
    dF = sp.diff(F, W)
    ux, uy = sp.diff(u, x), sp.diff(u, y)
    wexpr = ux**2 + uy**2
    flux = [2 * dF.subs(W, wexpr) * ux, 2 * dF.subs(W, wexpr) * uy]
    div = sp.lambdify((x, y), sp.diff(flux[0], x) + sp.diff(flux[1], y))
    derivs = [sp.lambdify((x, y), e) for e in (ux, uy, sp.diff(u, x, 2), sp.diff(u, x, y), sp.diff(u, y, 2))]
    for px, py in [(0.3, -0.4), (1.1, 0.7), (-0.8, 0.2)]:
        j = Jet2(0.0, *(float(f(px, py)) for f in derivs))
        assert V.el_residual(p, j) == pytest.approx(float(div(px, py)), rel=1e-10)


def test_p_gamma_conversion():
    assert V.gamma_to_p(-1).value == 1.0
    assert V.gamma_to_p(1).is_infinite
    assert V.p_to_gamma(4.0) == 2.0
    assert V.gamma_to_p(V.p_to_gamma(4.0)).value == 4.0
    assert V.p_to_gamma(math.inf) == 1.0
    with pytest.raises(V.NoFinitePreimageError):
        V.p_to_gamma(2.0)
    for g in (-3.0, -2.0, 1.5, 2.0, 3.0, -7.3, 0.1):
        assert V.p_to_gamma(V.gamma_to_p(g)) == g
