import numpy as np
import pytest

from bernstein.fields import Jet2


def random_jet(rng, scale=3.0):
    v = rng.uniform(-scale, scale, size=6)
    return Jet2(*v)


def random_jets(n, seed=0, scale=3.0):
    rng = np.random.default_rng(seed)
    return [random_jet(rng, scale) for _ in range(n)]


def rel_err(a, b, scale=0.0):
    """|a - b| relative to the larger of |a|, |b| and an optional term magnitude."""
    den = max(abs(a), abs(b), scale)
    return 0.0 if den == 0.0 else abs(a - b) / den


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def term_scale(params, jet):
    """Largest term magnitude over the expanded and the regrouped form of L."""
    from bernstein.operators import l_magnitude

    s = abs(2 * params.epsilon) + abs(params.gamma - 1) * jet.w
    compact = s * (abs(jet.uxx) + abs(jet.uyy)) + 2 * (
        jet.ux**2 * abs(jet.uxx) + 2 * abs(jet.ux * jet.uy * jet.uxy) + jet.uy**2 * abs(jet.uyy)
    )
    return max(l_magnitude(params, jet), compact)


def admissible_lattice():
    """(gamma, eps) pairs in a test lattice that admit a density."""
    from bernstein.params import OperatorParams
    from bernstein.variational import InadmissibleParamsError, density

    out = []
    for g in (-3.0, -2.0, -1.5, -1.0, 1.0, 1.5, 2.0, 3.0):
        for e in (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0):
            try:
                density(OperatorParams(g, e))
            except InadmissibleParamsError:
                continue
            out.append(OperatorParams(g, e))
    return out
