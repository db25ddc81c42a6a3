"""Damped Newton iteration for Dirichlet problems of L_{gamma,eps}[u] = 0."""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.linalg import LinAlgError, solve_banded

from ..operators import ellipticity
from ..params import OperatorParams
from . import backend
from .grid import GridFunction, GridSpec

__all__ = [
    "NewtonOptions",
    "NewtonResult",
    "ResidualReport",
    "NonConvergenceError",
    "SingularJacobianError",
    "NonEllipticWarning",
    "boundary_values",
    "initial_guess",
    "newton_solve",
    "solve_dirichlet",
    "residual_grid",
]

log = logging.getLogger(__name__)


class NonConvergenceError(RuntimeError):
    def __init__(self, message: str, iterations: int, residual: float):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class SingularJacobianError(RuntimeError):
    def __init__(self, message: str, iteration: int):
        super().__init__(message)
        self.iteration = iteration


class NonEllipticWarning(UserWarning):
    pass


@dataclass
class NewtonOptions:
    max_iterations: int = 20
    tol: float = 1e-10
    min_step: float = 2.0**-10
    initial_guess: str = "blend"  # blend | harmonic | zeros | supplied
    guess: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")
        if self.initial_guess not in ("blend", "harmonic", "zeros", "supplied"):
            raise ValueError(f"unknown initial guess {self.initial_guess!r}")
        if self.initial_guess == "supplied" and self.guess is None:
            raise ValueError("initial_guess='supplied' needs a guess array")


@dataclass(frozen=True)
class ResidualReport:
    max_abs: float
    rms: float
    worst_node: tuple[int, int]  # (i, j) grid indices

    def to_dict(self) -> dict:
        return {"max_abs": self.max_abs, "rms": self.rms, "worst_node": list(self.worst_node)}


@dataclass
class NewtonResult:
    solution: GridFunction
    iterations: int
    residual_history: list[float] = field(default_factory=list)
    step_sizes: list[float] = field(default_factory=list)
    backend: str = backend.BACKEND


def _report(r: np.ndarray) -> ResidualReport:
    a = np.abs(r)
    j, i = np.unravel_index(int(np.argmax(a)), a.shape)
    return ResidualReport(float(a[j, i]), float(np.sqrt(np.mean(r * r))), (int(i) + 1, int(j) + 1))


def residual_grid(params: OperatorParams, u: GridFunction, kernels=None) -> ResidualReport:
    """FD residual of L at every interior node."""
    k = kernels or backend.get_kernels()
    g = u.grid
    r = k.fd_residual(np.ascontiguousarray(u.values), g.hx, g.hy, params.gamma, params.epsilon)
    return _report(r)


def boundary_values(grid: GridSpec, boundary) -> np.ndarray:
    """Full (ny, nx) array holding boundary data on the rim and zeros inside.

    ``boundary`` is a :class:`GridFunction` on the same grid, a scalar field,
    or a callable ``(x, y) -> value``.
    """
    out = np.zeros((grid.ny, grid.nx))
    mask = grid.boundary_mask()
    if isinstance(boundary, GridFunction):
        if boundary.grid != grid:
            raise ValueError("boundary grid function lives on a different grid")
        out[mask] = boundary.values[mask]
    else:
        fn = getattr(boundary, "value", boundary)
        X, Y = grid.mesh()
        for j, i in zip(*np.nonzero(mask)):
            out[j, i] = fn(float(X[j, i]), float(Y[j, i]))
    if not np.all(np.isfinite(out[mask])):
        raise ValueError("boundary data must be finite")
    return out


def _blend(grid: GridSpec, u: np.ndarray) -> np.ndarray:
    # transfinite (Coons) interpolation of the four edges; exact on bilinear data
    s = ((grid.xs - grid.x0) / (grid.x1 - grid.x0))[None, :]
    t = ((grid.ys - grid.y0) / (grid.y1 - grid.y0))[:, None]
    bottom, top = u[0, :][None, :], u[-1, :][None, :]
    left, right = u[:, 0][:, None], u[:, -1][:, None]
    corners = (
        (1 - s) * (1 - t) * u[0, 0] + s * (1 - t) * u[0, -1] + (1 - s) * t * u[-1, 0] + s * t * u[-1, -1]
    )
    out = (1 - t) * bottom + t * top + (1 - s) * left + s * right - corners
    out[grid.boundary_mask()] = u[grid.boundary_mask()]
    return out


def _harmonic(grid: GridSpec, u: np.ndarray, kernels) -> np.ndarray:
    # at zero gradient L_{1,1/2} linearizes to the 5-point Laplacian
    m = grid.nx - 2
    ab = kernels.assemble_banded(np.zeros_like(u), grid.hx, grid.hy, 1.0, 0.5)
    lap = (u[1:-1, 2:] - 2 * u[1:-1, 1:-1] + u[1:-1, :-2]) / grid.hx**2 + (
        u[2:, 1:-1] - 2 * u[1:-1, 1:-1] + u[:-2, 1:-1]
    ) / grid.hy**2
    out = u.copy()
    out[1:-1, 1:-1] += solve_banded((m + 1, m + 1), ab, -lap.ravel()).reshape(lap.shape)
    return out


def initial_guess(grid: GridSpec, u_boundary: np.ndarray, opts: NewtonOptions, kernels=None) -> np.ndarray:
    k = kernels or backend.get_kernels()
    if opts.initial_guess == "blend":
        return _blend(grid, u_boundary)
    if opts.initial_guess == "harmonic":
        return _harmonic(grid, u_boundary, k)
    if opts.initial_guess == "zeros":
        return u_boundary.copy()
    out = np.array(opts.guess, dtype=float).reshape(grid.ny, grid.nx)
    mask = grid.boundary_mask()
    out[mask] = u_boundary[mask]
    return out


def newton_solve(
    params: OperatorParams,
    grid: GridSpec,
    boundary,
    opts: Optional[NewtonOptions] = None,
    kernels=None,
) -> NewtonResult:
    """Solve L[u] = 0 with Dirichlet data by damped Newton.

    Steps are halved until the max-norm residual does not increase; a step
    below ``opts.min_step`` ends the solve with :class:`NonConvergenceError`.
    """
    opts = opts or NewtonOptions()
    k = kernels or backend.get_kernels()
    if not ellipticity(params).elliptic:
        warnings.warn(f"{params} is not elliptic; Newton may fail", NonEllipticWarning, stacklevel=2)

    u = initial_guess(grid, boundary_values(grid, boundary), opts, k)
    hx, hy, g, e = grid.hx, grid.hy, params.gamma, params.epsilon
    m = grid.nx - 2
    res = k.fd_residual(u, hx, hy, g, e)
    norm = float(np.max(np.abs(res)))
    history, steps = [norm], []
    it = 0
    while norm > opts.tol:
        if it >= opts.max_iterations:
            raise NonConvergenceError(
                f"no convergence after {it} iterations (residual {norm:.3e})", it, norm
            )
        it += 1
        ab = k.assemble_banded(u, hx, hy, g, e)
        try:
            delta = solve_banded((m + 1, m + 1), ab, -res.ravel(), check_finite=False)
        except (LinAlgError, ValueError) as exc:
            raise SingularJacobianError(f"singular Newton system at iteration {it}: {exc}", it) from exc
        if not np.all(np.isfinite(delta)):
            raise SingularJacobianError(f"ill-conditioned Newton system at iteration {it}", it)
        delta = delta.reshape(res.shape)

        t = 1.0
        while True:
            trial = u.copy()
            trial[1:-1, 1:-1] += t * delta
            trial_res = k.fd_residual(trial, hx, hy, g, e)
            trial_norm = float(np.max(np.abs(trial_res)))
            if trial_norm <= norm:
                break
            t *= 0.5
            if t < opts.min_step:
                raise NonConvergenceError(
                    f"line search stalled at iteration {it} (residual {norm:.3e})", it, norm
                )
        u, res, norm = trial, trial_res, trial_norm
        history.append(norm)
        steps.append(t)
        log.debug("newton it=%d step=%g residual=%.3e", it, t, norm)

    return NewtonResult(GridFunction(grid, u), it, history, steps, "compiled" if k is not backend._kernels_py else "python")


def solve_dirichlet(params, grid, boundary, opts=None) -> GridFunction:
    return newton_solve(params, grid, boundary, opts).solution
