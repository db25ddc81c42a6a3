"""Finite-difference Newton solver for Dirichlet problems on rectangles."""

from .backend import BACKEND, COMPILED_AVAILABLE, get_kernels
from .grid import GridFunction, GridSpec, parse_grid_spec, read_csv, write_csv
from .newton import (
    NewtonOptions,
    NewtonResult,
    NonConvergenceError,
    NonEllipticWarning,
    ResidualReport,
    SingularJacobianError,
    newton_solve,
    residual_grid,
    solve_dirichlet,
)

__all__ = [
    "BACKEND",
    "COMPILED_AVAILABLE",
    "get_kernels",
    "GridFunction",
    "GridSpec",
    "parse_grid_spec",
    "read_csv",
    "write_csv",
    "NewtonOptions",
    "NewtonResult",
    "NonConvergenceError",
    "NonEllipticWarning",
    "ResidualReport",
    "SingularJacobianError",
    "newton_solve",
    "residual_grid",
    "solve_dirichlet",
]
