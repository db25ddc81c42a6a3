# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled FD residual and banded Jacobian assembly.

Same contract and storage layout as ``_kernels_py``.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline void _derivs(const double[:, ::1] u, Py_ssize_t j, Py_ssize_t i,
                         double hx, double hy, double* d) noexcept nogil:
    cdef double cc = u[j, i]
    cdef double e = u[j, i + 1], w = u[j, i - 1]
    cdef double n = u[j + 1, i], s = u[j - 1, i]
    d[0] = (e - w) / (2.0 * hx)
    d[1] = (n - s) / (2.0 * hy)
    d[2] = (e - 2.0 * cc + w) / (hx * hx)
    d[3] = (u[j + 1, i + 1] - u[j - 1, i + 1] - u[j + 1, i - 1] + u[j - 1, i - 1]) / (4.0 * hx * hy)
    d[4] = (n - 2.0 * cc + s) / (hy * hy)


def fd_residual(const double[:, ::1] u, double hx, double hy, double gamma, double eps):
    cdef Py_ssize_t ny = u.shape[0], nx = u.shape[1]
    out_arr = np.empty((ny - 2, nx - 2))
    cdef double[:, ::1] out = out_arr
    cdef double d[5]
    cdef double ux2, uy2, a, b, c
    cdef Py_ssize_t i, j
    with nogil:
        for j in range(1, ny - 1):
            for i in range(1, nx - 1):
                _derivs(u, j, i, hx, hy, d)
                ux2 = d[0] * d[0]
                uy2 = d[1] * d[1]
                a = 2.0 * eps + (gamma + 1.0) * ux2 + (gamma - 1.0) * uy2
                b = 4.0 * d[0] * d[1]
                c = 2.0 * eps + (gamma - 1.0) * ux2 + (gamma + 1.0) * uy2
                out[j - 1, i - 1] = a * d[2] + b * d[3] + c * d[4]
    return out_arr


def assemble_banded(const double[:, ::1] u, double hx, double hy, double gamma, double eps):
    cdef Py_ssize_t ny = u.shape[0], nx = u.shape[1]
    cdef Py_ssize_t m = nx - 2, k = ny - 2
    cdef Py_ssize_t size = m * k
    ab_arr = np.zeros((2 * m + 3, size))
    cdef double[:, ::1] ab = ab_arr
    cdef double d[5]
    cdef double ux, uy, ux2, uy2, a, b, c, px, py
    cdef double ihx2 = 1.0 / (hx * hx), ihy2 = 1.0 / (hy * hy)
    cdef double ihx = 0.5 / hx, ihy = 0.5 / hy, ihxy = 0.25 / (hx * hy)
    cdef Py_ssize_t i, j, r, off = m + 1
    cdef bint has_w, has_e, has_s, has_n
    with nogil:
        for j in range(k):
            for i in range(m):
                _derivs(u, j + 1, i + 1, hx, hy, d)
                ux = d[0]
                uy = d[1]
                ux2 = ux * ux
                uy2 = uy * uy
                a = 2.0 * eps + (gamma + 1.0) * ux2 + (gamma - 1.0) * uy2
                b = 4.0 * ux * uy
                c = 2.0 * eps + (gamma - 1.0) * ux2 + (gamma + 1.0) * uy2
                px = 2.0 * (gamma + 1.0) * ux * d[2] + 4.0 * uy * d[3] + 2.0 * (gamma - 1.0) * ux * d[4]
                py = 2.0 * (gamma - 1.0) * uy * d[2] + 4.0 * ux * d[3] + 2.0 * (gamma + 1.0) * uy * d[4]
                r = j * m + i
                has_w = i > 0
                has_e = i < m - 1
                has_s = j > 0
                has_n = j < k - 1
                # ab[off + r - col, col] = J[r, col]
                ab[off, r] = -2.0 * a * ihx2 - 2.0 * c * ihy2
                if has_e:
                    ab[off - 1, r + 1] = a * ihx2 + px * ihx
                if has_w:
                    ab[off + 1, r - 1] = a * ihx2 - px * ihx
                if has_n:
                    ab[off - m, r + m] = c * ihy2 + py * ihy
                    if has_e:
                        ab[off - m - 1, r + m + 1] = b * ihxy
                    if has_w:
                        ab[off - m + 1, r + m - 1] = -b * ihxy
                if has_s:
                    ab[off + m, r - m] = c * ihy2 - py * ihy
                    if has_w:
                        ab[off + m + 1, r - m - 1] = b * ihxy
                    if has_e:
                        ab[off + m - 1, r - m + 1] = -b * ihxy
    return ab_arr
