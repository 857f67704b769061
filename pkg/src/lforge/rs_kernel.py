"""Backend selection for the fast Riemann-Siegel Z(t) kernel.

Imports the compiled extension when available and falls back to the numpy
implementation otherwise; both expose z_block(t, m).  The active backend
name is in KERNEL_BACKEND.
"""

from __future__ import annotations

import numpy as np

from . import _rs_fallback
from .psi_tables import N_CENTERS, get_psi_tables

try:  # pragma: no cover - exercised indirectly via parity tests
    from . import _rs_kernel as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

KERNEL_BACKEND = "cython" if _compiled is not None else "numpy"

_n_tables = {"logn": np.zeros(0), "rsq": np.zeros(0)}


def _ensure_n_tables(n_max: int):
    if _n_tables["logn"].size < n_max:
        size = max(n_max, 2 * _n_tables["logn"].size, 1024)
        n = np.arange(1, size + 1, dtype=np.float64)
        _n_tables["logn"] = np.log(n)
        _n_tables["rsq"] = 1.0 / np.sqrt(n)
    return _n_tables["logn"], _n_tables["rsq"]


def z_block(t, m: int = 1, backend: str | None = None) -> np.ndarray:
    """Double-precision Z(t) for an array of t > 2 pi."""
    t = np.ascontiguousarray(t, dtype=np.float64)
    if t.size == 0:
        return np.zeros(0)
    if float(t.min()) <= 2 * np.pi:
        raise ValueError("z_block requires t > 2 pi")
    use = backend or KERNEL_BACKEND
    if use == "cython" and _compiled is not None:
        n_max = int(np.sqrt(t.max() / (2 * np.pi))) + 2
        logn, rsq = _ensure_n_tables(n_max)
        _, tables = get_psi_tables()
        return _compiled.rs_z_block(
            t, m, logn, rsq, tables[0], tables[2], tables[3], tables[6], N_CENTERS
        )
    return _rs_fallback.rs_z_block(t, m)


def theta_block(t, backend: str | None = None) -> np.ndarray:
    t = np.ascontiguousarray(t, dtype=np.float64)
    use = backend or KERNEL_BACKEND
    if use == "cython" and _compiled is not None:
        return _compiled.theta_block(t)
    return _rs_fallback.theta_block(t)
