# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Riemann-Siegel Z(t) kernel.

Same contract as _rs_fallback.rs_z_block: Z(t) for arrays of t > 2 pi in
double precision, main sum plus psi-table corrections up to C_m.  The psi
Taylor tables and the log/rsqrt tables are supplied from Python."""

import numpy as np

cimport cython
from libc.math cimport cos, log, sqrt, floor, atan2, M_PI

cdef double TWO_PI = 2.0 * M_PI

cdef double[6] STIRLING
STIRLING[0] = 1.0 / 12.0
STIRLING[1] = -1.0 / 360.0
STIRLING[2] = 1.0 / 1260.0
STIRLING[3] = -1.0 / 1680.0
STIRLING[4] = 1.0 / 1188.0
STIRLING[5] = -691.0 / 360360.0


cdef inline double _theta(double t) nogil:
    # Im loggamma(1/4 + it/2) - (t/2) log pi via complex Stirling in doubles
    cdef double zr = 0.25, zi = 0.5 * t
    cdef double r2 = zr * zr + zi * zi
    cdef double lr = 0.5 * log(r2)
    cdef double la = atan2(zi, zr)
    # (z - 1/2) log z - z + log(2 pi)/2, imaginary part
    cdef double im = (zr - 0.5) * la + zi * lr - zi
    # sum c_j / z^(2j-1): track w = z^-(2j-1)
    cdef double wr = zr / r2, wi = -zi / r2          # 1/z
    cdef double z2r = (zr * zr - zi * zi) / (r2 * r2)
    cdef double z2i = -2.0 * zr * zi / (r2 * r2)     # 1/z^2
    cdef int j
    cdef double tr, ti
    for j in range(6):
        im += STIRLING[j] * wi
        tr = wr * z2r - wi * z2i
        ti = wr * z2i + wi * z2r
        wr = tr
        wi = ti
    return im - 0.5 * t * log(M_PI)


cdef inline double _horner(const double[:, ::1] table, Py_ssize_t idx, double h, int ncoef) nogil:
    cdef double acc = 0.0
    cdef int k
    for k in range(ncoef - 1, -1, -1):
        acc = acc * h + table[idx, k]
    return acc


def theta_block(double[::1] t):
    out = np.empty(t.shape[0])
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(t.shape[0]):
            ov[i] = _theta(t[i])
    return out


def rs_z_block(double[::1] t,
               int m,
               double[::1] logn,
               double[::1] rsq,
               const double[:, ::1] psi0,
               const double[:, ::1] psi2,
               const double[:, ::1] psi3,
               const double[:, ::1] psi6,
               int n_centers):
    """Z(t) values; logn/rsq must cover n up to floor(sqrt(max t / 2pi))."""
    cdef Py_ssize_t nt = t.shape[0]
    out = np.empty(nt)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, idx
    cdef int n, k, nmax
    cdef double a, rho, th, acc, tv, h, c0, c1, c2, corr, ap
    cdef double pi2 = M_PI * M_PI
    cdef int ncoef = psi0.shape[1]
    nmax = logn.shape[0]
    with nogil:
        for i in range(nt):
            tv = t[i]
            a = sqrt(tv / TWO_PI)
            n = <int>floor(a)
            if n > nmax:  # wrapper sizes the tables; clamp defensively
                n = nmax
            rho = a - floor(a)
            th = _theta(tv)
            acc = 0.0
            for k in range(1, n + 1):
                acc += rsq[k - 1] * cos(tv * logn[k - 1] - th)
            acc *= 2.0
            # psi is not 1-periodic: rho near 1 stays on the last center
            idx = <Py_ssize_t>(rho * n_centers + 0.5)
            if idx >= n_centers:
                idx = n_centers - 1
            h = rho - (<double>idx) / n_centers
            c0 = _horner(psi0, idx, h, ncoef)
            corr = c0
            ap = a
            if m >= 1:
                c1 = -_horner(psi3, idx, h, ncoef) / (96.0 * pi2)
                corr += c1 / ap
                ap *= a
            if m >= 2:
                c2 = _horner(psi6, idx, h, ncoef) / (18432.0 * pi2 * pi2) \
                     + _horner(psi2, idx, h, ncoef) / (64.0 * pi2)
                corr += c2 / ap
            if n % 2 == 0:
                corr = -corr
            ov[i] = acc + corr / sqrt(a)
    return out
