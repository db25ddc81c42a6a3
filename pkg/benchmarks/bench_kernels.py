"""Compare the compiled and numpy kernels on the FD residual, the banded
Jacobian assembly and a full Newton solve.

    python benchmarks/bench_kernels.py --sizes 65 129 --repeat 5
"""

import argparse
import sys
import timeit

import numpy as np

from bernstein.constructions import build_wrong_mse_solution
from bernstein.params import OperatorParams
from bernstein.solver import GridFunction, GridSpec, newton_solve
from bernstein.solver.backend import COMPILED_AVAILABLE, get_kernels


def best_of(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[65, 129])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=10)
    args = ap.parse_args(argv)

    if not COMPILED_AVAILABLE:
        print("compiled extension not built; only the python backend is available", file=sys.stderr)
        return 1
    py, cc = get_kernels("python"), get_kernels("compiled")
    params = OperatorParams(1.0, 1.0)
    exact = build_wrong_mse_solution(1.0)

    print(f"{'n':>5} {'kernel':<10} {'python [ms]':>12} {'compiled [ms]':>14} {'speedup':>8}")
    for n in args.sizes:
        grid = GridSpec.square(1.0, n)
        u = GridFunction.sample(grid, exact).values
        # the two backends must agree before timings mean anything
        assert np.array_equal(py.fd_residual(u, grid.hx, grid.hy, 1.0, 1.0), cc.fd_residual(u, grid.hx, grid.hy, 1.0, 1.0))
        assert np.allclose(py.assemble_banded(u, grid.hx, grid.hy, 1.0, 1.0), cc.assemble_banded(u, grid.hx, grid.hy, 1.0, 1.0), rtol=1e-14, atol=0)
        rows = [
            ("residual", lambda k: (lambda: k.fd_residual(u, grid.hx, grid.hy, 1.0, 1.0)), args.number),
            ("jacobian", lambda k: (lambda: k.assemble_banded(u, grid.hx, grid.hy, 1.0, 1.0)), args.number),
            ("newton", lambda k: (lambda: newton_solve(params, grid, exact, kernels=k)), 1),
        ]
        for name, make, number in rows:
            tp = best_of(make(py), args.repeat, number)
            tc = best_of(make(cc), args.repeat, number)
            print(f"{n:>5} {name:<10} {1e3 * tp:>12.3f} {1e3 * tc:>14.3f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
