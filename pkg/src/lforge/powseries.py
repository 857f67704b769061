"""Truncated power-series arithmetic over mpmath numbers.

Internal helper used to produce high-order Taylor data for functions whose
symbolic derivatives would be unwieldy (the Riemann-Siegel psi function and
the uniform-asymptotics coefficients).  A series is a plain list of
coefficients [c0, c1, ...] in the local variable h, evaluated at the current
mpmath precision.
"""

from __future__ import annotations

import mpmath
from mpmath import mpf, mpc


def ps_trim(a, order):
    return a[: order + 1] + [mpf(0)] * max(0, order + 1 - len(a))


def ps_mul(a, b, order):
    out = [mpf(0)] * (order + 1)
    for i, ai in enumerate(a):
        if i > order or ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            out[i + j] += ai * bj
    return out


def ps_pow(a, k, order):
    out = ps_trim([mpf(1)], order)
    base = ps_trim(a, order)
    while k:
        if k & 1:
            out = ps_mul(out, base, order)
        k >>= 1
        if k:
            base = ps_mul(base, base, order)
    return out


def ps_div(a, b, order):
    """a/b with b[0] != 0."""
    a = ps_trim(a, order)
    b = ps_trim(b, order)
    if b[0] == 0:
        raise ZeroDivisionError("series division by zero constant term")
    out = [mpf(0)] * (order + 1)
    for k in range(order + 1):
        acc = a[k]
        for j in range(1, k + 1):
            acc -= b[j] * out[k - j]
        out[k] = acc / b[0]
    return out


def ps_shift_div(a, b, order, drop=1):
    """(a/h^drop) / (b/h^drop): division after removing a common zero of order `drop`."""
    for i in range(drop):
        if abs(a[i]) > mpf(10) ** (-(mpmath.mp.dps - 8)) or abs(b[i]) > mpf(10) ** (
            -(mpmath.mp.dps - 8)
        ):
            raise ZeroDivisionError("leading coefficients not negligible in shifted division")
    return ps_div(a[drop:], b[drop:], order)


def _compose_entire(maclaurin, u, order):
    """f(u(h)) for u with u[0]=0, where `maclaurin(k)` is the k-th Maclaurin
    coefficient of f.  Powers of u are accumulated iteratively."""
    u = ps_trim(u, order)
    assert u[0] == 0
    out = [mpf(0)] * (order + 1)
    out[0] = maclaurin(0)
    up = ps_trim([mpf(1)], order)
    for k in range(1, order + 1):
        up = ps_mul(up, u, order)
        ck = maclaurin(k)
        if ck:
            for i in range(k, order + 1):
                out[i] += ck * up[i]
    return out


def ps_cos(u, order):
    def mac(k):
        if k % 2:
            return mpf(0)
        return mpf(-1) ** (k // 2) / mpmath.factorial(k)

    return _compose_entire(mac, u, order)


def ps_sin(u, order):
    def mac(k):
        if k % 2 == 0:
            return mpf(0)
        return mpf(-1) ** ((k - 1) // 2) / mpmath.factorial(k)

    return _compose_entire(mac, u, order)


def ps_exp(u, order):
    return _compose_entire(lambda k: 1 / mpmath.factorial(k), u, order)


def ps_log1p(u, order):
    def mac(k):
        if k == 0:
            return mpf(0)
        return mpf(-1) ** (k + 1) / k

    return _compose_entire(mac, u, order)


def ps_sqrt1p(u, order):
    def mac(k):
        return mpmath.binomial(mpf(1) / 2, k)

    return _compose_entire(mac, u, order)


def ps_deriv(a):
    return [a[k] * k for k in range(1, len(a))]


def ps_eval(a, h):
    acc = mpc(0)
    for c in reversed(a):
        acc = acc * h + c
    return acc


def ps_eval_deriv(a, h, m):
    """Value of the m-th derivative of the series at offset h."""
    acc = mpc(0)
    n = len(a) - 1
    for k in range(n, m - 1, -1):
        coeff = a[k]
        fac = 1
        for i in range(k, k - m, -1):
            fac *= i
        acc = acc * h + coeff * fac
    return acc
