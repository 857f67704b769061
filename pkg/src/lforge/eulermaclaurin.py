"""Generic Euler-Maclaurin summation driver.

Computes sum_{a < n <= b} g(n) from the integral of g, endpoint derivative
values, and a caller-supplied bound on the integral of |g^(K)|; the returned
remainder bound is the |B_K({t})|-based one (with the sup |B_K| tightened to
|B_K| itself for even K).
"""

from __future__ import annotations

import mpmath
from mpmath import mpf

from .bernoulli import bernoulli_number
from .errors import InvalidRange
from .precision import CERTIFIED, ComplexValue, PrecisionContext, DEFAULT_CTX


def _sup_bk_fractional(K: int) -> mpf:
    """sup_t |B_K({t})|: equals |B_K| for even K, else K!/(2 pi)^K * 2 zeta(K)."""
    b = bernoulli_number(K)
    if K % 2 == 0 and K >= 2:
        return abs(mpf(b.numerator) / b.denominator)
    if K == 1:
        return mpf(1) / 2
    # odd K >= 3: Fourier bound
    zk = mpmath.nsum(lambda n: mpf(1) / n**K, [1, mpmath.inf])
    return mpmath.factorial(K) / (2 * mpmath.pi) ** K * 2 * zk


def euler_maclaurin(
    g_derivatives,
    a: int,
    b: int,
    K: int,
    integral,
    abs_deriv_K_integral,
    ctx: PrecisionContext = DEFAULT_CTX,
) -> ComplexValue:
    """Euler-Maclaurin estimate of sum_{a < n <= b} g(n).

    g_derivatives(m, t) must return g^(m)(t) for 0 <= m <= K; `integral` is
    the caller-computed value of int_a^b g(t) dt and `abs_deriv_K_integral`
    bounds int_a^b |g^(K)(t)| dt.
    """
    if a >= b:
        raise InvalidRange("euler_maclaurin requires a < b")
    if K < 1:
        raise ValueError("K must be a positive integer")
    with ctx.workdps(5):
        acc = mpmath.mpc(integral)
        for k in range(1, K + 1):
            bk = bernoulli_number(k)
            if not bk:
                continue
            coeff = mpf(-1) ** k * mpf(bk.numerator) / bk.denominator / mpmath.factorial(k)
            acc += coeff * (g_derivatives(k - 1, b) - g_derivatives(k - 1, a))
        bound = _sup_bk_fractional(K) / mpmath.factorial(K) * abs(mpmath.mpf(abs_deriv_K_integral))
    return ComplexValue.from_mpc(acc, float(bound), CERTIFIED)
