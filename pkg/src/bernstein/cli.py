"""Command-line front end.  JSON goes to stdout, logs to stderr, CSV to --out files.

Exit codes: 0 success, 1 domain failure (non-convergence, failed check,
inadmissible parameters), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import fields as F
from .constructions import HOLOMORPHIC_KINDS, SeparableSolution, build_wrong_mse_solution, holomorphic_map
from .knowledge import BernsteinQuery, bernstein_verdict, knowledge_table
from .operators import ellipticity, l_residual, mss_residual, named_form_residual
from .params import OperatorParams
from .solver import (
    GridFunction,
    GridSpec,
    NewtonOptions,
    NonConvergenceError,
    SingularJacobianError,
    newton_solve,
    parse_grid_spec,
    read_csv,
    residual_grid,
    write_csv,
)
from .variational import InadmissibleParamsError, gamma_to_p, nitsche_verdict

log = logging.getLogger("bernstein")

CATALOG_TOL = 1e-10


class DomainFailure(Exception):
    """Reported with exit code 1."""


def _clean(obj):
    """Replace non-finite floats so the payload is strict JSON."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        return _clean(obj.item())
    return obj


def _emit(payload) -> None:
    json.dump(_clean(payload), sys.stdout, indent=2, allow_nan=False)
    sys.stdout.write("\n")


def _field_from_id(solution_id: str):
    """Catalog id, or ``separable:C`` for the wrong minimal surface construction."""
    if solution_id.startswith("separable:"):
        c = float(solution_id.split(":", 1)[1])
        return build_wrong_mse_solution(c), OperatorParams(1.0, 1.0)
    return F.catalog(solution_id)


# --- subcommands -----------------------------------------------------------


def cmd_classify(args) -> dict:
    params = OperatorParams(args.gamma, args.epsilon)
    ell = ellipticity(params)
    try:
        nitsche = nitsche_verdict(params).to_dict()
        nitsche["applicable"] = True
    except InadmissibleParamsError as exc:
        nitsche = {"applicable": False, "verdict": None, "reason": str(exc)}
    q = BernsteinQuery(
        params, dim=args.dim, regularity=args.regularity.upper(), gradient_bound=args.gradient_bound, codim=args.codim
    )
    return {
        "gamma": params.gamma,
        "epsilon": params.epsilon,
        "p": gamma_to_p(params.gamma).value,
        "elliptic": ell.elliptic,
        "ellipticity": {
            "elliptic": ell.elliptic,
            "rule": ell.rule_source,
            "sampled_min_discriminant": ell.sampled_min_discriminant,
            "argmin_gradient": list(ell.argmin_gradient),
        },
        "nitsche": nitsche,
        "bernstein": bernstein_verdict(q).to_dict(),
        "query": {"dim": q.dim, "regularity": q.regularity, "gradient_bound": q.gradient_bound, "codim": q.codim},
    }


def cmd_residual(args) -> dict:
    params = OperatorParams(args.gamma, args.epsilon)
    field, solves = _field_from_id(args.solution)
    grid = parse_grid_spec(args.grid)
    X, Y = grid.mesh()
    vals = np.array([l_residual(params, field.jet(float(x), float(y))) for x, y in zip(X.ravel(), Y.ravel())])
    fd = residual_grid(params, GridFunction.sample(grid, field))
    k = int(np.argmax(np.abs(vals)))
    return {
        "solution": args.solution,
        "gamma": params.gamma,
        "epsilon": params.epsilon,
        "catalog_params": None if solves is None else list(solves.as_tuple()),
        "analytic": {
            "max_abs": float(np.max(np.abs(vals))),
            "rms": float(np.sqrt(np.mean(vals**2))),
            "worst_point": [float(X.ravel()[k]), float(Y.ravel()[k])],
        },
        "finite_difference": fd.to_dict(),
    }


def cmd_nitsche(args) -> dict:
    try:
        return nitsche_verdict(OperatorParams(args.gamma, args.epsilon)).to_dict()
    except InadmissibleParamsError as exc:
        raise DomainFailure(str(exc)) from exc


def cmd_construct(args) -> dict:
    sol = SeparableSolution(args.c)
    field = sol.as_field()
    grid = GridSpec.square(args.range, args.nodes)
    u = GridFunction.sample(grid, field)
    write_csv(u, args.out)
    X, Y = grid.mesh()
    res = max(
        abs(named_form_residual("wrong-minimal-surface", field.jet(float(x), float(y))))
        for x, y in zip(X.ravel(), Y.ravel())
    )
    return {
        "c": args.c,
        "out": str(args.out),
        "grid": [grid.x0, grid.x1, grid.y0, grid.y1, grid.nx, grid.ny],
        "g_second_derivative_at_0": sol.gpp(0.0),
        "nonlinear": not sol.is_linear,
        "max_wrong_mse_residual": res,
    }


def cmd_solve(args) -> dict:
    params = OperatorParams(args.gamma, args.epsilon)
    grid = parse_grid_spec(args.grid)
    exact = None
    if Path(args.boundary).is_file():
        boundary = read_csv(args.boundary)
        if boundary.grid != grid:
            raise DomainFailure(f"boundary file grid {boundary.grid} differs from --grid {grid}")
    else:
        boundary, _ = _field_from_id(args.boundary)
        exact = boundary
    opts = NewtonOptions(max_iterations=args.max_iterations, tol=args.tol, initial_guess=args.initial_guess)
    try:
        result = newton_solve(params, grid, boundary, opts)
    except (NonConvergenceError, SingularJacobianError) as exc:
        raise DomainFailure(str(exc)) from exc
    if args.out:
        write_csv(result.solution, args.out)
    payload = {
        "gamma": params.gamma,
        "epsilon": params.epsilon,
        "grid": [grid.x0, grid.x1, grid.y0, grid.y1, grid.nx, grid.ny],
        "iterations": result.iterations,
        "residual_history": result.residual_history,
        "step_sizes": result.step_sizes,
        "backend": result.backend,
        "residual": residual_grid(params, result.solution).to_dict(),
        "out": str(args.out) if args.out else None,
    }
    if exact is not None:
        ref = GridFunction.sample(grid, exact).values
        payload["max_error_vs_boundary_field"] = float(np.max(np.abs(result.solution.values - ref)))
    return payload


def catalog_checks(n_points: int = 100, seed: int = 0) -> list[dict]:
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-3.0, 3.0, size=(n_points, 2))
    checks = []
    affine_params = [OperatorParams(g, e) for g in (-2.0, -1.0, 0.0, 1.0, 2.0) for e in (-1.0, 0.0, 1.0)]
    for sid in F.CATALOG_IDS:
        field, params = F.catalog(sid)
        for p in [params] if params is not None else affine_params:
            worst = max(abs(l_residual(p, field.jet(x, y))) for x, y in pts)
            checks.append({"solution": sid, "gamma": p.gamma, "epsilon": p.epsilon, "max_abs": worst})
    wide = rng.uniform(-10.0, 10.0, size=(n_points, 2))
    for c in (0.5, 1.0, 3.0):
        field = build_wrong_mse_solution(c)
        worst = max(abs(l_residual(OperatorParams(1.0, 1.0), field.jet(x, y))) for x, y in wide)
        checks.append({"solution": f"separable:{c}", "gamma": 1.0, "epsilon": 1.0, "max_abs": worst})
    for kind, n in HOLOMORPHIC_KINDS:
        worst = max(
            float(np.max(np.abs(mss_residual(holomorphic_map(kind, F.Point2(x, y), n))))) for x, y in pts / 3.0
        )
        checks.append({"solution": f"holomorphic:{kind}{n or ''}", "system": "minimal-surface", "max_abs": worst})
    for c in checks:
        c["passed"] = c["max_abs"] <= CATALOG_TOL
    return checks


def cmd_catalog_verify(args) -> dict:
    checks = catalog_checks()
    ok = all(c["passed"] for c in checks)
    payload = {"tolerance": CATALOG_TOL, "passed": ok, "checks": checks}
    if not ok:
        _emit(payload)
        raise DomainFailure("catalog residual check failed")
    return payload


def cmd_report(args) -> list:
    return knowledge_table()


# --- parser ----------------------------------------------------------------


def _params_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bernstein", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("classify", help="ellipticity, Nitsche report and Bernstein verdict")
    _params_args(p)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--regularity", choices=["c2", "c4", "C2", "C4"], default="c2")
    p.add_argument("--gradient-bound", type=float, default=None)
    p.add_argument("--codim", type=int, default=1)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("residual", help="L residual of an explicit solution on a grid")
    p.add_argument("--solution", required=True, help="catalog id or separable:C")
    _params_args(p)
    p.add_argument("--grid", required=True, help="x0,x1,y0,y1,nx,ny")
    p.set_defaults(func=cmd_residual)

    p = sub.add_parser("nitsche", help="divergence verdict of the Nitsche integral")
    _params_args(p)
    p.set_defaults(func=cmd_nitsche)

    p = sub.add_parser("construct", help="sample the separable wrong-MSE solution to CSV")
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--range", type=float, default=1.0)
    p.add_argument("--nodes", type=int, default=33)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("solve", help="Dirichlet problem by finite-difference Newton")
    _params_args(p)
    p.add_argument("--boundary", required=True, help="catalog id, separable:C, or a grid CSV file")
    p.add_argument("--grid", required=True, help="x0,x1,y0,y1,nx,ny")
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--max-iterations", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--initial-guess", choices=["blend", "harmonic", "zeros"], default="blend")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("catalog-verify", help="residual suite over every explicit solution")
    p.set_defaults(func=cmd_catalog_verify)

    p = sub.add_parser("report", help="export the Bernstein verdict table as JSON")
    p.set_defaults(func=cmd_report)
    return parser


def _join_grid(argv: list[str]) -> list[str]:
    """Turn ``--grid -1,1,...`` into ``--grid=-1,1,...``; argparse would read
    the leading minus as an option."""
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--grid":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--grid={nxt}")
        else:
            out.append(tok)
    return out


def run(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_join_grid(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        _emit(args.func(args))
    except DomainFailure as exc:
        log.error("%s", exc)
        if args.command != "catalog-verify":
            _emit({"error": str(exc)})
        return 1
    except (ValueError, KeyError) as exc:
        parser.print_usage(sys.stderr)
        print(f"bernstein: error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
