"""Uniform rectangular grids, grid functions and their CSV form."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["GridSpec", "GridFunction", "parse_grid_spec", "write_csv", "read_csv"]


@dataclass(frozen=True)
class GridSpec:
    x0: float
    x1: float
    y0: float
    y1: float
    nx: int
    ny: int

    def __post_init__(self) -> None:
        if not all(math.isfinite(v) for v in (self.x0, self.x1, self.y0, self.y1)):
            raise ValueError("grid bounds must be finite")
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError(f"empty rectangle [{self.x0},{self.x1}]x[{self.y0},{self.y1}]")
        if self.nx < 3 or self.ny < 3:
            raise ValueError(f"need at least 3 nodes per side, got {self.nx}x{self.ny}")

    @property
    def hx(self) -> float:
        return (self.x1 - self.x0) / (self.nx - 1)

    @property
    def hy(self) -> float:
        return (self.y1 - self.y0) / (self.ny - 1)

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x0, self.x1, self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.y0, self.y1, self.ny)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Coordinate arrays of shape (ny, nx); index [j, i] is node (x_i, y_j)."""
        return np.meshgrid(self.xs, self.ys, indexing="xy")

    def boundary_mask(self) -> np.ndarray:
        m = np.zeros((self.ny, self.nx), dtype=bool)
        m[0, :] = m[-1, :] = m[:, 0] = m[:, -1] = True
        return m

    @classmethod
    def square(cls, radius: float, n: int) -> "GridSpec":
        return cls(-radius, radius, -radius, radius, n, n)


def parse_grid_spec(text: str) -> GridSpec:
    """Parse ``x0,x1,y0,y1,nx,ny``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 6:
        raise ValueError(f"grid spec needs 6 comma-separated fields, got {text!r}")
    x0, x1, y0, y1 = (float(p) for p in parts[:4])
    return GridSpec(x0, x1, y0, y1, int(parts[4]), int(parts[5]))


@dataclass(frozen=True)
class GridFunction:
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.size != self.grid.nx * self.grid.ny:
            raise ValueError(f"{v.size} values for a {self.grid.nx}x{self.grid.ny} grid")
        v = v.reshape(self.grid.ny, self.grid.nx)
        if not np.all(np.isfinite(v)):
            raise ValueError("grid function has non-finite values")
        object.__setattr__(self, "values", v)

    @classmethod
    def sample(cls, grid: GridSpec, fn) -> "GridFunction":
        """Evaluate ``fn(x, y)`` (or a field's ``value``) at every node."""
        fn = getattr(fn, "value", fn)
        vals = np.array([[fn(float(x), float(y)) for x in grid.xs] for y in grid.ys])
        return cls(grid, vals)


def write_csv(u: GridFunction, path: str | Path) -> None:
    """Header line ``nx,ny,x0,x1,y0,y1`` then one value per line, x fastest."""
    g = u.grid
    with open(path, "w") as fh:
        fh.write(",".join(repr(v) for v in (g.nx, g.ny, g.x0, g.x1, g.y0, g.y1)) + "\n")
        for v in u.values.ravel():
            fh.write(repr(float(v)) + "\n")


def read_csv(path: str | Path) -> GridFunction:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if lines and lines[0].lower().startswith("nx"):
        lines = lines[1:]  # tolerate a column-name line
    head = lines[0].split(",")
    if len(head) != 6:
        raise ValueError(f"bad CSV header {lines[0]!r}")
    grid = GridSpec(float(head[2]), float(head[3]), float(head[4]), float(head[5]), int(head[0]), int(head[1]))
    return GridFunction(grid, np.array([float(v) for v in lines[1:]]))
