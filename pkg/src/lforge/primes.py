"""Prime sieve, Mobius function, prime zeta via Mobius inversion, and
Euler products with rational local factors.

The prime zeta tail h(s) - sum_{p<=P} p^-s is computed from
sum_m (mu(m)/m) log(zeta(ms) prod_{p<=P}(1 - p^-ms)), which converges
exponentially fast in m; Euler products are split at a head cutoff P and
the log-series tail is fed through h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import mpmath
from mpmath import mpf, mpc

from .errors import DomainError, SeriesDivergence
from .precision import CERTIFIED, HEURISTIC, ComplexValue, PrecisionContext, DEFAULT_CTX
from .zeta import zeta_em_raw, zeta_em_derivative

DEFAULT_HEAD_CUTOFF = 101


class PrimeSieve:
    """Primes and mu(n) up to `limit`, built with vectorized sieving."""

    def __init__(self, limit: int):
        if limit < 2:
            raise ValueError("sieve limit must be >= 2")
        self.limit = int(limit)
        flags = np.ones(self.limit + 1, dtype=bool)
        flags[:2] = False
        for p in range(2, int(self.limit**0.5) + 1):
            if flags[p]:
                flags[p * p :: p] = False
        self._flags = flags
        self.primes = np.flatnonzero(flags)
        self._mu = None

    @property
    def mu_table(self) -> np.ndarray:
        if self._mu is None:
            mu = np.ones(self.limit + 1, dtype=np.int8)
            for p in self.primes:
                if p * p > self.limit:
                    break
                mu[p::p] *= -1
                mu[p * p :: p * p] = 0
            # remaining prime factors > sqrt(limit) flip sign once each
            rem = np.arange(self.limit + 1, dtype=np.int64)
            for p in self.primes:
                if p * p > self.limit:
                    break
                step = p
                while step <= self.limit:
                    rem[step::step] //= p
                    step *= p
            mu[2:] = np.where(rem[2:] > 1, -mu[2:], mu[2:])
            mu[0] = 0
            self._mu = mu
        return self._mu

    def mobius(self, n: int) -> int:
        if n < 1 or n > self.limit:
            raise ValueError("n outside sieve range")
        return int(self.mu_table[n])

    def primes_up_to(self, x: int) -> np.ndarray:
        return self.primes[self.primes <= x]


_small_sieve = None


def small_sieve(limit: int = 10**6) -> PrimeSieve:
    global _small_sieve
    if _small_sieve is None or _small_sieve.limit < limit:
        _small_sieve = PrimeSieve(limit)
    return _small_sieve


def _log_zeta_head_removed(x, head_primes) -> mpc:
    """log( zeta(x) * prod_{p<=P} (1 - p^-x) ) at current precision."""
    digits = max(10, int(mpmath.mp.dps) - 8)
    val, _ = zeta_em_raw(x, digits)
    acc = mpmath.log(val)
    for p in head_primes:
        acc += mpmath.log(1 - mpf(p) ** (-x))
    return acc


def prime_zeta(s, P: int = 1, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """h(s) - sum_{p<=P} p^-s by Mobius inversion, for Re s > 1."""
    s = mpc(s)
    if s.real <= 1:
        raise DomainError("prime_zeta requires Re s > 1")
    sieve = small_sieve()
    head_primes = [int(p) for p in sieve.primes_up_to(P)] if P >= 2 else []
    with ctx.workdps(8):
        acc = mpc(0)
        sigma = float(s.real)
        stop = 10.0 ** (-(ctx.digits + 2))
        m = 1
        while True:
            # truncation rule: |log zeta(m sigma)| below threshold ends the sum
            if m > 2 and 2.0 ** (-m * sigma) * 2.5 < stop:
                break
            mu = sieve.mobius(m)
            if mu:
                term = mpf(mu) / m * _log_zeta_head_removed(m * s, head_primes)
                acc += term
            m += 1
            if m > 40000:
                raise DomainError("prime_zeta failed to truncate; s too close to 1?")
        err = float(abs(acc)) * 10.0 ** (-ctx.digits) + stop
        out = acc
    return ComplexValue.from_mpc(out, err, CERTIFIED)


def prime_zeta_value(s, ctx: PrecisionContext = DEFAULT_CTX, P: int = 1) -> ComplexValue:
    """h(s) itself: head over p <= P plus the Mobius-inverted tail."""
    tail = prime_zeta(s, P, ctx)
    if P < 2:
        return tail
    sieve = small_sieve()
    with ctx.workdps(8):
        s = mpc(s)
        head = mpmath.fsum(
            (mpf(int(p)) ** (-s) for p in sieve.primes_up_to(P)), absolute=False
        )
        out = head + tail.value
    return ComplexValue.from_mpc(out, tail.err, tail.err_kind)


def _log_zeta_derivs(x, r: int, ctx: PrecisionContext) -> list:
    """(log zeta)^(j)(x) for j = 0..r via zeta derivatives and the Leibniz
    recursion f^(m) = sum C(m-1,i) f^(i) l_(m-i)."""
    f = [zeta_em_derivative(x, j, ctx).value if j else zeta_em_raw(x, ctx.digits)[0] for j in range(r + 1)]
    lvals = [mpmath.log(f[0])]
    for m in range(1, r + 1):
        acc = f[m]
        for i in range(1, m):
            acc -= mpmath.binomial(m - 1, i) * f[i] * lvals[m - i]
        lvals.append(acc / f[0])
    return lvals


def prime_logpow_sum(r: int, m: int, ctx: PrecisionContext = DEFAULT_CTX) -> ComplexValue:
    """sum_p (log p)^r p^-m = (-1)^r sum_k mu(k) k^(r-1) (log zeta)^(r)(k m)."""
    if m < 2:
        raise DomainError("prime_logpow_sum requires m >= 2")
    if r < 0 or r > 6:
        raise ValueError("r must satisfy 0 <= r <= 6")
    if r == 0:
        return prime_zeta_value(m, ctx)
    sieve = small_sieve()
    with ctx.workdps(8):
        acc = mpf(0)
        stop = 10.0 ** (-(ctx.digits + 2))
        k = 1
        while True:
            if k > 2 and (k * m) * math.log(k * m) ** r * 2.0 ** (-k * m) * 2.5 < stop:
                break
            mu = sieve.mobius(k)
            if mu:
                lz = _log_zeta_derivs(mpf(k) * m, r, ctx)[r]
                acc += mu * mpf(k) ** (r - 1) * lz
            k += 1
        acc = mpf(-1) ** r * acc
        err = float(abs(acc)) * 10.0 ** (-ctx.digits) + stop
    return ComplexValue.from_mpc(acc, err, HEURISTIC)


@dataclass(frozen=True)
class RationalLocalFactor:
    """Local factor F(x), x = 1/p, with F(0) = 1.

    Either num/den polynomial coefficient lists (constant term first) or a
    truncated series; log F is expanded by exact Fraction arithmetic.
    """

    num: tuple
    den: tuple = (Fraction(1),)
    series: tuple | None = None

    @staticmethod
    def from_coeffs(num, den=(1,)) -> "RationalLocalFactor":
        num = tuple(Fraction(c) for c in num)
        den = tuple(Fraction(c) for c in den)
        if not num or num[0] / den[0] != 1:
            raise ValueError("local factor must satisfy F(0) = 1")
        return RationalLocalFactor(num, den)

    @staticmethod
    def from_series(coeffs) -> "RationalLocalFactor":
        coeffs = tuple(Fraction(c) for c in coeffs)
        if not coeffs or coeffs[0] != 1:
            raise ValueError("series local factor must start with 1")
        return RationalLocalFactor((Fraction(1),), (Fraction(1),), coeffs)

    def series_coeffs(self, order: int) -> list:
        """Taylor coefficients of F to `order` (exact Fractions)."""
        if self.series is not None:
            out = list(self.series[: order + 1])
            if len(out) < order + 1:
                raise SeriesDivergence("series local factor shorter than required order")
            return out
        num = list(self.num) + [Fraction(0)] * max(0, order + 1 - len(self.num))
        den = list(self.den) + [Fraction(0)] * max(0, order + 1 - len(self.den))
        out = []
        for k in range(order + 1):
            acc = num[k]
            for j in range(1, k + 1):
                acc -= den[j] * out[k - j]
            out.append(acc / den[0])
        return out

    def log_coeffs(self, order: int) -> list:
        """Coefficients c_m of log F(x) = sum c_m x^m (exact)."""
        f = self.series_coeffs(order)
        # l' = f'/f  =>  k f_k = sum_{j=1..k} j l_j f_{k-j}
        l = [Fraction(0)]
        for k in range(1, order + 1):
            acc = Fraction(k) * f[k]
            for j in range(1, k):
                acc -= j * l[j] * f[k - j]
            l.append(acc / k)
        return l

    def value(self, x) -> mpf:
        """F(x) at current mpmath precision."""
        if self.series is not None:
            acc = mpf(0)
            for c in reversed(self.series):
                acc = acc * x + mpf(c.numerator) / c.denominator
            return acc
        num = mpf(0)
        for c in reversed(self.num):
            num = num * x + mpf(c.numerator) / c.denominator
        den = mpf(0)
        for c in reversed(self.den):
            den = den * x + mpf(c.numerator) / c.denominator
        return num / den

    @staticmethod
    def parse(text: str) -> "RationalLocalFactor":
        """Text spec: 'num: c0 c1 ...' and optional 'den: c0 c1 ...' lines."""
        num, den = None, (1,)
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, rest = line.partition(":")
            vals = tuple(Fraction(tok) for tok in rest.split())
            if key.strip() == "num":
                num = vals
            elif key.strip() == "den":
                den = vals
            else:
                raise ValueError("unknown local-factor key %r" % key)
        if num is None:
            raise ValueError("local factor spec needs a 'num:' line")
        return RationalLocalFactor.from_coeffs(num, den)


def euler_product(
    factor: RationalLocalFactor,
    P: int = DEFAULT_HEAD_CUTOFF,
    ctx: PrecisionContext = DEFAULT_CTX,
    p_min: int = 2,
) -> ComplexValue:
    """prod_{p_min <= p} F(1/p), head over p <= P direct, tail via h(m)."""
    order = max(4, math.ceil((ctx.digits + 4) / math.log10(max(P, 3))))
    log_c = factor.log_coeffs(order)
    # ratio test at 1/P on the last coefficients
    tailmags = [abs(c) / Fraction(P) ** m for m, c in enumerate(log_c) if m >= order - 3 and c]
    if tailmags and min(float(x) for x in tailmags) > 1.0:
        raise SeriesDivergence("log local factor fails the ratio test at 1/P")
    if log_c[1] != 0:
        raise SeriesDivergence("c_1 != 0: Euler product diverges")
    sieve = small_sieve()
    with ctx.workdps(8):
        head = mpf(1)
        for p in sieve.primes_up_to(P):
            if p < p_min:
                continue
            head *= factor.value(mpf(1) / int(p))
        tail_log = mpf(0)
        for m_idx in range(2, order + 1):
            c = log_c[m_idx]
            if not c:
                continue
            hm = prime_zeta(m_idx, P, ctx).value.real
            tail_log += mpf(c.numerator) / c.denominator * hm
        val = head * mpmath.exp(tail_log)
        # discarded log-series tail: geometric beyond the truncation order
        last = abs(log_c[order]) / Fraction(P + 2) ** order if log_c[order] else Fraction(0)
        err = float(val) * (10.0 ** (-ctx.digits) + 2.0 * float(last))
    return ComplexValue(val, 0, abs(err), CERTIFIED)


def ak_local_factor(k: int) -> RationalLocalFactor:
    """Local factor of the moment constant a_k (finite-sum form, integer k)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    # (1-x)^((k-1)^2) * sum_j C(k-1,j)^2 x^j  as an exact polynomial
    e = (k - 1) ** 2
    pow_coeffs = [Fraction(math.comb(e, i)) * (-1) ** i for i in range(e + 1)]
    sum_coeffs = [Fraction(math.comb(k - 1, j) ** 2) for j in range(k)]
    out = [Fraction(0)] * (e + k)
    for i, a in enumerate(pow_coeffs):
        for j, b in enumerate(sum_coeffs):
            out[i + j] += a * b
    return RationalLocalFactor.from_coeffs(out)


def twin_prime_local_factor() -> RationalLocalFactor:
    """p(p-2)/(p-1)^2 = (1 - 2x)/(1 - x)^2 with x = 1/p."""
    return RationalLocalFactor.from_coeffs([1, -2], [1, -2, 1])
