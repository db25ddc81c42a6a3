"""Pure numpy kernels: FD residual and banded Jacobian of L on a uniform grid.

Arrays are indexed [j, i] (y, x).  Unknowns are the interior nodes numbered
row-major, r = (j-1)*m + (i-1) with m = nx - 2, so the Jacobian has
bandwidth m + 1 on either side.  Banded storage follows LAPACK/scipy:
ab[m + 1 + r - c, c] = J[r, c].
"""

import numpy as np


def _derivatives(u, hx, hy):
    c = u[1:-1, 1:-1]
    e, w = u[1:-1, 2:], u[1:-1, :-2]
    n, s = u[2:, 1:-1], u[:-2, 1:-1]
    ux = (e - w) / (2.0 * hx)
    uy = (n - s) / (2.0 * hy)
    uxx = (e - 2.0 * c + w) / (hx * hx)
    uyy = (n - 2.0 * c + s) / (hy * hy)
    uxy = (u[2:, 2:] - u[:-2, 2:] - u[2:, :-2] + u[:-2, :-2]) / (4.0 * hx * hy)
    return ux, uy, uxx, uxy, uyy


def fd_residual(u, hx, hy, gamma, eps):
    ux, uy, uxx, uxy, uyy = _derivatives(u, hx, hy)
    ux2, uy2 = ux * ux, uy * uy
    a = 2.0 * eps + (gamma + 1.0) * ux2 + (gamma - 1.0) * uy2
    b = 4.0 * ux * uy
    c = 2.0 * eps + (gamma - 1.0) * ux2 + (gamma + 1.0) * uy2
    return a * uxx + b * uxy + c * uyy


def assemble_banded(u, hx, hy, gamma, eps):
    ny, nx = u.shape
    m, k = nx - 2, ny - 2
    size = m * k
    ux, uy, uxx, uxy, uyy = _derivatives(u, hx, hy)
    ux2, uy2 = ux * ux, uy * uy
    a = 2.0 * eps + (gamma + 1.0) * ux2 + (gamma - 1.0) * uy2
    b = 4.0 * ux * uy
    c = 2.0 * eps + (gamma - 1.0) * ux2 + (gamma + 1.0) * uy2
    # dL/du_x and dL/du_y at frozen second derivatives
    px = 2.0 * (gamma + 1.0) * ux * uxx + 4.0 * uy * uxy + 2.0 * (gamma - 1.0) * ux * uyy
    py = 2.0 * (gamma - 1.0) * uy * uxx + 4.0 * ux * uxy + 2.0 * (gamma + 1.0) * uy * uyy

    ihx2, ihy2 = 1.0 / (hx * hx), 1.0 / (hy * hy)
    ihx, ihy, ihxy = 0.5 / hx, 0.5 / hy, 0.25 / (hx * hy)
    stencil = {
        (0, 0): -2.0 * a * ihx2 - 2.0 * c * ihy2,
        (1, 0): a * ihx2 + px * ihx,
        (-1, 0): a * ihx2 - px * ihx,
        (0, 1): c * ihy2 + py * ihy,
        (0, -1): c * ihy2 - py * ihy,
        (1, 1): b * ihxy,
        (-1, -1): b * ihxy,
        (-1, 1): -b * ihxy,
        (1, -1): -b * ihxy,
    }
    ab = np.zeros((2 * m + 3, size))
    ii, jj = np.meshgrid(np.arange(m), np.arange(k), indexing="xy")
    rows = (jj * m + ii).ravel()
    for (di, dj), coef in stencil.items():
        ti, tj = ii + di, jj + dj
        inside = ((ti >= 0) & (ti < m) & (tj >= 0) & (tj < k)).ravel()
        cols = (tj * m + ti).ravel()[inside]
        ab[m + 1 + rows[inside] - cols, cols] = coef.ravel()[inside]
    return ab
