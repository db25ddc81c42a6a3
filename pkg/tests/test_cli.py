import json

import numpy as np
import pytest

from bernstein.cli import catalog_checks, run
from bernstein.constructions import build_wrong_mse_solution
from bernstein.solver import GridFunction, GridSpec, read_csv, write_csv


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_no_command_is_usage_error(capsys):
    assert run([]) == 2
    assert "usage" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--gamma", "1"],
        ["classify", "--gamma", "x", "--epsilon", "1"],
        ["nitsche", "--gamma", "1", "--epsilon", "1", "--bogus"],
        ["residual", "--solution", "nope", "--gamma", "0", "--epsilon", "0", "--grid", "-1,1,-1,1,5,5"],
        ["residual", "--solution", "affine", "--gamma", "0", "--epsilon", "0", "--grid", "-1,1,5,5"],
        ["frobnicate"],
    ],
)
def test_bad_arguments_exit_2(capsys, argv):
    assert run(argv) == 2


def test_classify_wrong_mse(capsys):
    code, out = call(capsys, "classify", "--gamma", "1", "--epsilon", "1")
    assert code == 0
    assert out["elliptic"] is True
    assert out["nitsche"]["verdict"] == "diverges"
    assert out["bernstein"]["status"] == "fails"
    assert "separable-wrong-mse" in out["bernstein"]["witnesses"]
    assert out["p"] == "inf"


def test_classify_dimension_and_codim(capsys):
    _, out = call(capsys, "classify", "--gamma", "-1", "--epsilon", "-1", "--dim", "8")
    assert out["bernstein"]["status"] == "fails"
    _, out = call(capsys, "classify", "--gamma", "-1", "--epsilon", "-1", "--dim", "2", "--codim", "2")
    assert out["bernstein"]["witnesses"] == ["holomorphic-z2", "holomorphic-exp"]
    _, out = call(capsys, "classify", "--gamma", "2", "--epsilon", "0")
    assert out["nitsche"]["applicable"] is False and out["bernstein"]["status"] == "open"


def test_output_is_strict_json(capsys):
    run(["classify", "--gamma", "1", "--epsilon", "0"])
    text = capsys.readouterr().out
    data = json.loads(text)
    # re-serialising without NaN/inf support must not raise
    json.dumps(data, allow_nan=False)


def test_nitsche(capsys):
    code, out = call(capsys, "nitsche", "--gamma", "-1", "--epsilon", "-1")
    assert code == 0 and out["verdict"] == "converges"
    code, out = call(capsys, "nitsche", "--gamma", "2", "--epsilon", "1")
    assert out["verdict"] == "diverges" and out["tail_coefficient"] == 0.75


def test_nitsche_inadmissible_is_domain_failure(capsys):
    code, out = call(capsys, "nitsche", "--gamma", "0.5", "--epsilon", "1")
    assert code == 1 and "error" in out


def test_residual_catalog(capsys):
    code, out = call(capsys, "residual", "--solution", "exp-sum", "--gamma", "-1", "--epsilon", "0", "--grid", "-1,1,-1,1,9,9")
    assert code == 0
    assert out["analytic"]["max_abs"] <= 1e-10
    assert out["catalog_params"] == [-1.0, 0.0]


def test_residual_separable_nonzero_for_wrong_params(capsys):
    _, out = call(capsys, "residual", "--solution", "separable:1", "--gamma", "1", "--epsilon", "1", "--grid", "-2,2,-2,2,9,9")
    assert out["analytic"]["max_abs"] <= 1e-10
    _, out = call(capsys, "residual", "--solution", "separable:1", "--gamma", "-1", "--epsilon", "-1", "--grid", "-2,2,-2,2,9,9")
    assert out["analytic"]["max_abs"] > 1e-2


def test_construct_writes_csv(capsys, tmp_path):
    path = tmp_path / "u.csv"
    code, out = call(capsys, "construct", "--c", "1", "--out", str(path), "--nodes", "9")
    assert code == 0 and out["nonlinear"] and out["g_second_derivative_at_0"] == 1.0
    u = read_csv(path)
    ref = GridFunction.sample(GridSpec.square(1.0, 9), build_wrong_mse_solution(1.0))
    assert u.grid == ref.grid
    np.testing.assert_array_equal(u.values, ref.values)


def test_solve_from_catalog_id(capsys, tmp_path):
    path = tmp_path / "sol.csv"
    code, out = call(
        capsys, "solve", "--gamma", "1", "--epsilon", "1", "--boundary", "separable:1",
        "--grid", "-1,1,-1,1,17,17", "--out", str(path),
    )
    assert code == 0
    assert out["iterations"] <= 20
    assert out["residual"]["max_abs"] <= 1e-10
    assert out["max_error_vs_boundary_field"] < 1e-3
    assert read_csv(path).grid == GridSpec.square(1.0, 17)


def test_solve_from_csv_boundary(capsys, tmp_path):
    grid = GridSpec.square(1.0, 9)
    src = tmp_path / "b.csv"
    write_csv(GridFunction.sample(grid, lambda x, y: 1.0 + 2.0 * x - y), src)
    code, out = call(capsys, "solve", "--gamma", "-1", "--epsilon", "-1", "--boundary", str(src), "--grid", "-1,1,-1,1,9,9")
    assert code == 0 and out["residual"]["max_abs"] <= 1e-12
    code, _ = call(capsys, "solve", "--gamma", "-1", "--epsilon", "-1", "--boundary", str(src), "--grid", "-1,1,-1,1,11,11")
    assert code == 1


def test_solve_nonconvergence_exit_1(capsys):
    code, out = call(
        capsys, "solve", "--gamma", "1", "--epsilon", "1", "--boundary", "separable:3",
        "--grid", "-1,1,-1,1,17,17", "--max-iterations", "1", "--initial-guess", "zeros",
    )
    assert code == 1 and "error" in out


def test_catalog_verify(capsys):
    code, out = call(capsys, "catalog-verify")
    assert code == 0 and out["passed"]
    assert all(c["max_abs"] <= out["tolerance"] for c in out["checks"])
    assert {c["solution"] for c in out["checks"]} >= {"affine", "quadratic-sum", "separable:1.0", "holomorphic:exponential"}


def test_catalog_checks_cover_holomorphic_kinds():
    names = [c["solution"] for c in catalog_checks(n_points=5)]
    assert sum(n.startswith("holomorphic:") for n in names) == 5


def test_report_table(capsys):
    code, rows = call(capsys, "report")
    assert code == 0 and len(rows) == 5 * 3 * 3 * 2
    assert {r["regularity"] for r in rows} == {"c2", "c4"}
    assert all(r["witnesses"] for r in rows if r["status"] == "fails")
