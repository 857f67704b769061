"""Double-precision Taylor tables for the Riemann-Siegel psi function.

The fast Z(t) kernels evaluate psi and its derivatives from piecewise Taylor
expansions about 32 equally spaced centers on [0,1).  The tables are
generated once with mpmath at high precision (the series division loses
digits near the removable singularities, so generation runs at 80 digits)
and cached as float64 arrays.
"""

from __future__ import annotations

import numpy as np
import mpmath
from mpmath import mpf

from .powseries import ps_div, ps_shift_div
from .rspsi import _num_den_series

N_CENTERS = 32
ORDER = 24

_cache = None


def _deriv_table(coeffs: np.ndarray, m: int) -> np.ndarray:
    """Coefficients of the m-th derivative of each rowwise Taylor polynomial."""
    n_centers, n_coeff = coeffs.shape
    out = np.zeros((n_centers, n_coeff), dtype=np.float64)
    for k in range(m, n_coeff):
        fac = 1.0
        for i in range(k, k - m, -1):
            fac *= i
        out[:, k - m] = coeffs[:, k] * fac
    return out


def get_psi_tables():
    """(centers, {m: coeff array}) for m in {0, 2, 3, 6}."""
    global _cache
    if _cache is not None:
        return _cache
    coeffs = np.zeros((N_CENTERS, ORDER + 1), dtype=np.float64)
    with mpmath.workdps(80):
        for k in range(N_CENTERS):
            center = mpf(k) / N_CENTERS
            num, den = _num_den_series(center, ORDER + 1)
            if abs(den[0]) < mpf(10) ** (-40):
                series = ps_shift_div(num, den, ORDER, drop=1)
            else:
                series = ps_div(num, den, ORDER)
            coeffs[k, :] = [float(c) for c in series]
    centers = np.arange(N_CENTERS) / N_CENTERS
    tables = {m: _deriv_table(coeffs, m) for m in (0, 2, 3, 6)}
    _cache = (centers, tables)
    return _cache
