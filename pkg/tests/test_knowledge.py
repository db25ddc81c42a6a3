import json
import math
from pathlib import Path

import pytest

from bernstein.constructions import build_wrong_mse_solution, scale_field
from bernstein.fields import CustomJet, Jet2
from bernstein.knowledge import (
    STATUSES,
    WITNESSES,
    BernsteinQuery,
    BernsteinVerdict,
    bernstein_verdict,
    knowledge_table,
    normalize_epsilon,
    sample_grid,
    verify_witness,
)
from bernstein.operators import l_residual
from bernstein.params import OperatorParams as P
from bernstein.variational import InadmissibleParamsError, nitsche_verdict

GOLDEN = json.loads((Path(__file__).parent / "data" / "bernstein_golden.json").read_text())
# literature-only witnesses: nothing explicit to evaluate
LITERATURE_ONLY = {"bdgg-minimal-graph", "lawson-osserman-cone"}


def _query(row):
    return BernsteinQuery(
        P(row["gamma"], row["epsilon"]),
        dim=row["dim"],
        regularity=row.get("regularity", "C2"),
        gradient_bound=row.get("gradient_bound"),
        codim=row.get("codim", 1),
    )


@pytest.mark.parametrize("row", GOLDEN, ids=lambda r: json.dumps(r, sort_keys=True))
def test_golden_table(row):
    v = bernstein_verdict(_query(row))
    assert v.status == row["status"]
    assert list(v.witnesses) == row.get("witnesses", [])
    assert v.anchor


def test_spec_examples():
    assert bernstein_verdict(BernsteinQuery(P(-1, -1))).status == "holds"
    assert bernstein_verdict(BernsteinQuery(P(-1, -1), dim=8)).status == "fails"
    v = bernstein_verdict(BernsteinQuery(P(1, 1)))
    assert v.status == "fails" and "separable-wrong-mse" in v.witnesses
    assert bernstein_verdict(BernsteinQuery(P(2, 0))).status == "open"
    assert bernstein_verdict(BernsteinQuery(P(1, 0), dim=5, regularity="C4")).status == "holds"
    assert bernstein_verdict(BernsteinQuery(P(-1, 1), gradient_bound=0.9)).status == "conditional-holds"


def _all_queries():
    qs = [_query(r) for r in GOLDEN]
    for g in (-2.0, -1.0, 0.0, 1.0, 2.0):
        for e in (-1.0, 0.0, 1.0):
            for n in (2, 5, 8):
                for reg in ("C2", "C4"):
                    qs.append(BernsteinQuery(P(g, e), dim=n, regularity=reg))
    return qs


def test_failing_verdicts_are_witnessed():
    checked = 0
    for q in _all_queries():
        v = bernstein_verdict(q)
        if v.status != "fails":
            continue
        assert v.witnesses
        results = [verify_witness(w, q.params) for w in v.witnesses]
        for w, ok in zip(v.witnesses, results):
            if w in LITERATURE_ONLY:
                assert ok is None
            else:
                assert ok is True, (q, w)
                checked += 1
    assert checked > 10


def test_witness_check_is_not_vacuous():
    assert verify_witness("quadratic-sum", P(1, 1)) is False
    assert verify_witness("x-plus-h", P(-1, -1)) is False
    assert verify_witness("nitsche-criterion", P(-1, -1)) is False
    assert set(LITERATURE_ONLY) == {k for k, w in WITNESSES.items() if not w.verifiable}


def test_lattice_is_total():
    rows = knowledge_table()
    assert len(rows) == 5 * 3 * 3 * 2
    for r in rows:
        assert r["status"] in STATUSES
        assert set(r) >= {"gamma", "epsilon", "dim", "regularity", "status", "anchor", "witnesses"}
    json.loads(json.dumps(rows))


def test_agrees_with_nitsche_where_both_speak():
    for g in (-3.0, -2.0, -1.5, -1.0, 1.0, 1.5, 2.0, 3.0):
        for e in (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0):
            try:
                r = nitsche_verdict(P(g, e))
            except InadmissibleParamsError:
                continue
            v = bernstein_verdict(BernsteinQuery(P(g, e)))
            if r.verdict == "diverges":
                assert v.status == "fails" and "nitsche-criterion" in v.witnesses, (g, e)
            else:
                assert v.status != "fails", (g, e)


def test_verdict_invariants():
    with pytest.raises(ValueError):
        BernsteinVerdict("fails", "x")
    with pytest.raises(ValueError):
        BernsteinVerdict("holds", "")
    with pytest.raises(ValueError):
        BernsteinQuery(P(1, 1), dim=1)
    with pytest.raises(ValueError):
        BernsteinQuery(P(1, 1), codim=0)


@pytest.mark.parametrize(
    "eps,expected,a",
    [(4.0, (3.0, 1.0), 2.0), (0.0, (3.0, 0.0), 1.0), (-9.0, (3.0, -1.0), 3.0), (1.0, (3.0, 1.0), 1.0)],
)
def test_normalize_epsilon(eps, expected, a):
    p, s = normalize_epsilon(P(3.0, eps))
    assert p.as_tuple() == expected
    assert (s.a, s.b) == (a, 1.0)


def _helicoid(x, y):
    # u = atan2(y, x) solves the minimal surface equation off the origin
    r2 = x * x + y * y
    r4 = r2 * r2
    return Jet2(math.atan2(y, x), -y / r2, x / r2, 2 * x * y / r4, (y * y - x * x) / r4, -2 * x * y / r4)


@pytest.mark.parametrize("eps", [0.25, 4.0, -0.25, -4.0])
def test_normalize_round_trip(eps):
    target = P(1.0 if eps > 0 else -1.0, eps)
    normalized, scaling = normalize_epsilon(target)
    if eps > 0:
        base = build_wrong_mse_solution(1.0)
        pts = sample_grid(20, 10.0)
    else:
        base = CustomJet(_helicoid, name="helicoid")
        pts = [(x + 4.0, y) for x, y in sample_grid(20, 3.0)]
    assert max(abs(l_residual(normalized, base.jet(x, y))) for x, y in pts) <= 1e-8
    v = scale_field(base, scaling)
    assert max(abs(l_residual(target, v.jet(x, y))) for x, y in pts) <= 1e-8
