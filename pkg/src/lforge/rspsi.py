"""Taylor data for the Riemann-Siegel correction function psi.

psi(rho) = cos(2 pi (rho^2 - rho - 1/16)) / cos(2 pi rho) is entire (the
zeros of the denominator at rho = 1/4, 3/4 are cancelled), and the C_r
corrections need psi and a few of its derivatives.  Rather than carrying
large symbolic derivative expressions we build local Taylor series with
truncated power-series arithmetic: around the evaluation point in the
regular case, around the removable singularity when cos(2 pi rho) is small.
"""

from __future__ import annotations

import mpmath
from mpmath import mpf

from .powseries import ps_cos, ps_sin, ps_div, ps_shift_div, ps_eval_deriv

# Window half-width around rho = 1/4, 3/4 inside which we expand about the
# exact removable point instead of dividing by a small cos(2 pi rho).  Wider
# than the |cos| < 1e-3 rule so the regular path keeps its conditioning.
SINGULAR_WINDOW = 0.01

_series_cache: dict = {}


def _num_den_series(center, order):
    """Series of numerator and denominator of psi about `center`."""
    two_pi = 2 * mpmath.pi
    a = two_pi * (center * center - center - mpf(1) / 16)
    b = two_pi * (2 * center - 1)
    u = [mpf(0), b, two_pi]
    cos_u = ps_cos(u, order)
    sin_u = ps_sin(u, order)
    ca, sa = mpmath.cos(a), mpmath.sin(a)
    num = [ca * cos_u[k] - sa * sin_u[k] for k in range(order + 1)]
    v = [mpf(0), two_pi]
    cos_v = ps_cos(v, order)
    sin_v = ps_sin(v, order)
    cd, sd = mpmath.cos(two_pi * center), mpmath.sin(two_pi * center)
    den = [cd * cos_v[k] - sd * sin_v[k] for k in range(order + 1)]
    return num, den


def _singular_series(which: int, dps: int, order: int):
    """Cached psi series about rho0 = 1/4 (which=0) or 3/4 (which=1)."""
    key = (which, dps, order)
    hit = _series_cache.get(key)
    if hit is not None:
        return hit
    with mpmath.workdps(dps + 10):
        center = mpf(1) / 4 if which == 0 else mpf(3) / 4
        num, den = _num_den_series(center, order + 1)
        series = ps_shift_div(num, den, order, drop=1)
    _series_cache[key] = series
    return series


def psi_derivs(rho, orders=(0, 2, 3, 6)):
    """Values of psi^(m)(rho) for the requested orders, at current precision."""
    rho = mpf(rho)
    max_m = max(orders)
    dps = mpmath.mp.dps
    d14 = abs(rho - mpf(1) / 4)
    d34 = abs(rho - mpf(3) / 4)
    if min(d14, d34) < SINGULAR_WINDOW:
        which = 0 if d14 < d34 else 1
        order = max_m + dps + 12
        series = _singular_series(which, dps, order)
        h = rho - (mpf(1) / 4 if which == 0 else mpf(3) / 4)
        with mpmath.workdps(dps + 10):
            vals = {m: ps_eval_deriv(series, h, m) for m in orders}
    else:
        # direct expansion about rho; only coefficients 0..max_m are needed
        guard = 14
        with mpmath.workdps(dps + guard):
            num, den = _num_den_series(rho, max_m)
            series = ps_div(num, den, max_m)
            vals = {m: series[m] * mpmath.factorial(m) for m in orders}
    return {m: mpf(v.real) if isinstance(v, mpmath.mpc) else mpf(v) for m, v in vals.items()}


def rs_correction_coeffs(rho, m: int):
    """C_0..C_m(rho) of the Riemann-Siegel expansion, m <= 2."""
    if m < 0 or m > 2:
        raise ValueError("correction order m must be 0, 1 or 2")
    needed = {0: (0,), 1: (0, 3), 2: (0, 2, 3, 6)}[m]
    d = psi_derivs(rho, needed)
    pi2 = mpmath.pi**2
    out = [d[0]]
    if m >= 1:
        out.append(-d[3] / (96 * pi2))
    if m >= 2:
        out.append(d[6] / (18432 * pi2 * pi2) + d[2] / (64 * pi2))
    return out
