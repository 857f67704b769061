"""log Gamma by upward recurrence plus the Stirling series.

The recurrence Gamma(z+1) = z Gamma(z) is applied until the argument clears
a threshold that grows with the working precision, after which the Stirling
series with exact Bernoulli-number coefficients converges comfortably.  The
branch is the principal one, kept continuous along the recurrence chain by
subtracting principal logarithms of the shifted factors.
"""

from __future__ import annotations

import mpmath
from mpmath import mpf, mpc

from .bernoulli import bernoulli_number
from .errors import PoleError, NonConvergence
from .precision import CERTIFIED, ComplexValue, PrecisionContext, DEFAULT_CTX


def _is_nonpositive_integer(z: mpc) -> bool:
    if z.imag != 0:
        return False
    r = z.real
    return r <= 0 and r == mpmath.floor(r)


def _stirling(w: mpc) -> mpc:
    """Stirling series at w; caller guarantees |w| is past the threshold."""
    acc = (w - mpf(1) / 2) * mpmath.log(w) - w + mpmath.log(2 * mpmath.pi) / 2
    w2 = w * w
    wp = w
    tol = mpf(10) ** (-(mpmath.mp.dps + 4))
    prev = mpmath.inf
    for j in range(1, 2 * mpmath.mp.dps + 20):
        b = bernoulli_number(2 * j)
        term = mpf(b.numerator) / b.denominator / ((2 * j) * (2 * j - 1)) / wp
        acc += term
        size = abs(term)
        if size < tol * (1 + abs(acc)):
            return acc
        if size > prev:
            raise NonConvergence("Stirling series diverging before target accuracy")
        prev = size
        wp = wp * w2
    raise NonConvergence("Stirling series did not reach target accuracy")


def log_gamma_raw(z) -> mpc:
    """log Gamma(z) at the current mpmath precision (principal branch)."""
    z = mpc(z)
    if _is_nonpositive_integer(z):
        raise PoleError("log_gamma pole at z=%s" % z)
    threshold = 10 + 1.5 * mpmath.mp.dps
    if abs(z.imag) >= threshold:
        shift = max(0, int(mpmath.ceil(-z.real)))
    else:
        shift = max(0, int(mpmath.ceil(threshold - z.real)))
    w = z + shift
    result = _stirling(w)
    for j in range(shift):
        result -= mpmath.log(z + j)
    return result


def log_gamma(z, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """Branch-consistent log Gamma accurate to ctx.digits."""
    with ctx.workdps(5):
        val = log_gamma_raw(z)
        err = float((1 + abs(val)) * mpf(10) ** (-ctx.digits))
    return ComplexValue.from_mpc(val, err, CERTIFIED)


def gamma_raw(z) -> mpc:
    z = mpc(z)
    if z.real > 0.5 and z.imag == 0 and z.real == mpmath.floor(z.real) and z.real < 200:
        return mpc(mpmath.factorial(int(z.real) - 1))
    return mpmath.exp(log_gamma_raw(z))


def gamma(z, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    with ctx.workdps(5):
        val = gamma_raw(z)
        err = float(abs(val) * mpf(10) ** (-ctx.digits))
    return ComplexValue.from_mpc(val, err, CERTIFIED)
