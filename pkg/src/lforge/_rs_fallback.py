"""Pure-numpy Riemann-Siegel Z(t) kernel (fallback for the compiled one).

Double precision only; used by zero scans at modest digit counts.  The
compiled extension in _rs_kernel.pyx implements the same contract.
"""

from __future__ import annotations

import numpy as np

from .psi_tables import N_CENTERS, get_psi_tables

TWO_PI = 2.0 * np.pi

# Stirling coefficients B_2j / ((2j)(2j-1)) for the double-precision theta
_STIRLING = np.array(
    [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
    ]
)


def theta_block(t: np.ndarray) -> np.ndarray:
    """theta(t) for t >= ~20, via complex Stirling at z = 1/4 + it/2."""
    t = np.asarray(t, dtype=np.float64)
    z = 0.25 + 0.5j * t
    lg = (z - 0.5) * np.log(z) - z + 0.5 * np.log(2.0 * np.pi)
    zp = z.copy()
    z2 = z * z
    for c in _STIRLING:
        lg = lg + c / zp
        zp = zp * z2
    return lg.imag - 0.5 * t * np.log(np.pi)


def _psi_corrections(rho: np.ndarray, m: int):
    """C_0..C_m at each rho via the piecewise Taylor tables."""
    centers, tables = get_psi_tables()
    # psi is not 1-periodic: rho near 1 stays on the last center (|h| <= 1/32)
    idx = np.minimum(np.rint(rho * N_CENTERS).astype(np.int64), N_CENTERS - 1)
    h = rho - idx.astype(np.float64) / N_CENTERS

    def horner(table):
        coeff = table[idx]
        acc = np.zeros_like(h)
        for k in range(coeff.shape[1] - 1, -1, -1):
            acc = acc * h + coeff[:, k]
        return acc

    psi0 = horner(tables[0])
    out = [psi0]
    pi2 = np.pi * np.pi
    if m >= 1:
        out.append(-horner(tables[3]) / (96.0 * pi2))
    if m >= 2:
        out.append(horner(tables[6]) / (18432.0 * pi2 * pi2) + horner(tables[2]) / (64.0 * pi2))
    return out


def rs_z_block(t: np.ndarray, m: int = 1, chunk: int = 512) -> np.ndarray:
    """Z(t) for an array of t > 2 pi, main sum plus corrections up to C_m."""
    t = np.asarray(t, dtype=np.float64)
    if t.size == 0:
        return np.zeros(0)
    if np.any(t <= TWO_PI):
        raise ValueError("rs_z_block requires t > 2 pi")
    a = np.sqrt(t / TWO_PI)
    nmain = np.floor(a).astype(np.int64)
    rho = a - nmain
    theta = theta_block(t)
    n_max = int(nmain.max())
    logn = np.log(np.arange(1, n_max + 1, dtype=np.float64))
    rsq = 1.0 / np.sqrt(np.arange(1, n_max + 1, dtype=np.float64))
    out = np.empty_like(t)
    # group by main-sum length so each chunk is a dense matrix product
    order = np.argsort(nmain, kind="stable")
    i = 0
    while i < t.size:
        j = i + 1
        n_i = nmain[order[i]]
        while j < t.size and nmain[order[j]] == n_i and j - i < chunk:
            j += 1
        sel = order[i:j]
        phases = np.outer(t[sel], logn[:n_i]) - theta[sel][:, None]
        out[sel] = 2.0 * (np.cos(phases) @ rsq[:n_i])
        i = j
    corr = _psi_corrections(rho, m)
    acc = corr[0].copy()
    ap = a.copy()
    for c in corr[1:]:
        acc += c / ap
        ap *= a
    sign = np.where(nmain % 2 == 0, -1.0, 1.0)
    out += sign * acc / np.sqrt(a)
    return out
