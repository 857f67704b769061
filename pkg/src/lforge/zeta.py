"""zeta(s), its derivatives, theta(t) and the Riemann-Siegel Z(t).

zeta_em follows the head-plus-tail Euler-Maclaurin scheme: the head sum of N
terms is evaluated term by term, the tail analytically, and the returned err
is the certified remainder bound.  Z_rs carries corrections up to C_2 with
Gabcke's certified bound for m=1, t >= 200.
"""

from __future__ import annotations

import math

import mpmath
from mpmath import mpf, mpc

from .bernoulli import bernoulli_number
from .errors import DomainError, PoleError, PrecisionExceeded
from .loggamma import log_gamma_raw
from .precision import CERTIFIED, HEURISTIC, ComplexValue, PrecisionContext, DEFAULT_CTX
from .rspsi import rs_correction_coeffs

_TWO_PI = 2 * math.pi


def _em_params(s: complex, digits: int):
    """(K0, N) selection: 2K0-1 > digits + log10|s+2K0-1|/2 and 2 pi N >= 10|s+2K0-2|,
    then verify the certified bound and bump K0 if needed."""
    sc = complex(s)
    k0 = math.ceil((digits + 0.5 * math.log10(abs(sc) + 2 * digits)) / 2) + 1
    k0 = max(k0, math.floor((2 - sc.real) / 2) + 1, 2)
    while True:
        if 2 * k0 > 180:
            raise PrecisionExceeded(
                "zeta_em cannot reach %d digits at s=%s with cached Bernoulli numbers" % (digits, s)
            )
        n = max(math.ceil(10 * abs(sc + 2 * k0 - 2) / _TWO_PI), k0, 2)
        if _em_bound_log10(sc, k0, n) < -(digits + 1):
            return k0, n
        k0 += 1


def _em_bound_log10(sc: complex, k0: int, n: int) -> float:
    """log10 of the certified tail remainder bound."""
    sigma = sc.real
    if sigma + 2 * k0 - 1 <= 0:
        return math.inf
    acc = math.log10(1.1) - math.log10(math.pi) - sigma * math.log10(n)
    acc += math.log10(abs(sc + 2 * k0 - 1)) - math.log10(sigma + 2 * k0 - 1)
    for j in range(2 * k0 - 1):
        av = abs(sc + j)
        if av == 0:
            return -math.inf  # binomial factor vanishes: tail is exact
        acc += math.log10(av / (_TWO_PI * n))
    return acc


def zeta_em_raw(s, digits: int):
    """(value, certified err bound) at current mpmath precision."""
    s = mpc(s)
    if s == 1:
        raise PoleError("zeta pole at s=1")
    k0, n = _em_params(complex(s), digits)
    head = mpc(0)
    if s.imag == 0:
        sr = s.real
        for j in range(1, n + 1):
            head += mpf(j) ** (-sr)
    else:
        for j in range(1, n + 1):
            head += mpmath.exp(-s * mpmath.log(j))
    nn = mpf(n)
    tail = nn ** (1 - s) / (s - 1)
    c = mpc(1)  # binom(s+k-2, k-1), starts at k=1
    p = nn ** (-s)
    for k in range(1, 2 * k0 + 1):
        bk = bernoulli_number(k)
        if bk:
            tail += c * (mpf(bk.numerator) / bk.denominator / k) * p
        c = c * (s + k - 1) / k
        p = p / nn
    bound = 10.0 ** _em_bound_log10(complex(s), k0, n)
    return head + tail, bound


def zeta_em(s, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """zeta(s) by Euler-Maclaurin with a certified tail bound."""
    with ctx.workdps(5):
        val, bound = zeta_em_raw(s, ctx.digits)
        rounding = float(abs(val)) * 10.0 ** (-ctx.working_digits + 1)
    return ComplexValue.from_mpc(val, bound + rounding, CERTIFIED)


def _pochhammer_derivs(s: mpc, k: int, r: int):
    """Derivatives f^(i), i <= r, of f(s) = prod_{j=0}^{k-2} (s+j)."""
    if k <= 1:
        return [mpc(1)] + [mpc(0)] * r
    f = [mpc(1)] + [mpc(0)] * r
    prod = mpc(1)
    for j in range(k - 1):
        prod *= s + j
    f[0] = prod
    if r == 0:
        return f
    # L^(p) = (-1)^p p! sum_j (s+j)^(-p-1)
    inv = [1 / (s + j) for j in range(k - 1)]
    lg = []
    powers = list(inv)
    for p in range(r):
        lg.append(mpf(-1) ** p * mpmath.factorial(p) * mpmath.fsum(powers, absolute=False))
        powers = [powers[i] * inv[i] for i in range(k - 1)]
    for m in range(1, r + 1):
        acc = mpc(0)
        for i in range(m):
            acc += mpmath.binomial(m - 1, i) * f[i] * lg[m - 1 - i]
        f[m] = acc
    return f


def zeta_em_derivative(s, r: int, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """r-th derivative of zeta via termwise-differentiated head and tail."""
    if r < 0 or r > 8:
        raise ValueError("derivative order r must satisfy 0 <= r <= 8")
    if r == 0:
        return zeta_em(s, ctx)
    with ctx.workdps(8):
        s = mpc(s)
        if s == 1:
            raise PoleError("zeta pole at s=1")
        k0, n = _em_params(complex(s), ctx.digits + 2)
        for j in range(2 * k0 - 1):
            if abs(s + j) < mpf(10) ** (-6):
                raise DomainError("zeta_em_derivative: s too close to a tail-polynomial root")
        head = mpc(0)
        for j in range(1, n + 1):
            lj = mpmath.log(j)
            head += (-lj) ** r * mpmath.exp(-s * lj)
        nn = mpf(n)
        ln_n = mpmath.log(nn)
        # d^r/ds^r [N^{1-s}/(s-1)]
        n_pow = nn ** (1 - s)
        tail = mpc(0)
        for i in range(r + 1):
            tail += (
                mpmath.binomial(r, i)
                * (-ln_n) ** i
                * n_pow
                * mpf(-1) ** (r - i)
                * mpmath.factorial(r - i)
                * (s - 1) ** (-(r - i) - 1)
            )
        # tail polynomial terms
        p = nn ** (-s)
        last = mpf(0)
        for k in range(1, 2 * k0 + 1):
            bk = bernoulli_number(k)
            if bk:
                coeff = mpf(bk.numerator) / bk.denominator / k / mpmath.factorial(k - 1)
                derivs = _pochhammer_derivs(s, k, r)
                term = mpc(0)
                for i in range(r + 1):
                    term += mpmath.binomial(r, i) * derivs[i] * (-ln_n) ** (r - i)
                term *= coeff * p
                tail += term
                last = abs(term)
            p = p / nn
        val = head + tail
        err = float(last) + float(abs(val)) * 10.0 ** (-ctx.digits)
    return ComplexValue.from_mpc(val, err, HEURISTIC)


def theta_rs_raw(t) -> mpf:
    t = mpf(t)
    lg = log_gamma_raw(mpc(mpf(1) / 4, t / 2))
    return lg.imag - t / 2 * mpmath.log(mpmath.pi)


def theta_rs(t, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, continuous in t."""
    if t <= 0:
        raise DomainError("theta_rs requires t > 0")
    with ctx.workdps(5):
        val = theta_rs_raw(t)
        err = float((1 + abs(val)) * mpf(10) ** (-ctx.digits))
    return ComplexValue(val, 0, err, CERTIFIED)


def z_rs(t, m: int = 1, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """Riemann-Siegel Z(t) with correction order m in {0,1,2}.

    err is Gabcke's certified bound 0.053 t^(-5/4) when m=1 and t >= 200;
    otherwise the heuristic last-correction size.
    """
    if m not in (0, 1, 2):
        raise ValueError("correction order m must be 0, 1 or 2")
    t = mpf(t)
    if t <= _TWO_PI:
        raise DomainError("Riemann-Siegel formula requires t > 2 pi")
    with ctx.workdps(5):
        a = mpmath.sqrt(t / (2 * mpmath.pi))
        n = int(mpmath.floor(a))
        rho = a - n
        theta = theta_rs_raw(t)
        acc = mpf(0)
        for k in range(1, n + 1):
            acc += mpmath.cos(t * mpmath.log(k) - theta) / mpmath.sqrt(k)
        main = 2 * acc
        coeffs = rs_correction_coeffs(rho, m)
        corr = mpf(0)
        ap = mpmath.sqrt(a)
        last_term = mpf(0)
        for r_idx, cr in enumerate(coeffs):
            last_term = cr / a**r_idx / ap
            corr += last_term
        corr *= mpf(-1) ** (n + 1)
        val = main + corr
        if m == 1 and t >= 200:
            err = float(0.053 * t ** mpf("-1.25"))
            kind = CERTIFIED
        else:
            err = float(abs(last_term))
            kind = HEURISTIC
    return ComplexValue(val, 0, err, kind)
