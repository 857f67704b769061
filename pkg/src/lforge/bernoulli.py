"""Bernoulli numbers as exact rationals and Bernoulli polynomials.

Numbers are generated by the defining recursion and cached up to index
K_MAX = 200; beyond that the table refuses rather than approximate.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

import mpmath
from mpmath import mpf

from .errors import PrecisionExceeded

K_MAX = 200

_numbers: list[Fraction] = [Fraction(1)]


def _extend(k: int) -> None:
    while len(_numbers) <= k:
        m = len(_numbers)
        # sum_{j=0}^{m} C(m+1,j) B_j = 0  for m >= 1
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * _numbers[j]
        _numbers.append(-acc / (m + 1))


def bernoulli_number(k: int) -> Fraction:
    """B_k = B_k(0), exact."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > K_MAX:
        raise PrecisionExceeded("Bernoulli numbers cached only up to k=%d" % K_MAX)
    _extend(k)
    return _numbers[k]


def bernoulli_poly(k: int, t):
    """B_k(t) = sum_{m=0}^{k} C(k,m) B_{k-m} t^m.

    Exact when t is a Fraction/int, otherwise evaluated at the current
    mpmath precision.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    _extend(min(k, K_MAX))
    if k > K_MAX:
        raise PrecisionExceeded("Bernoulli numbers cached only up to k=%d" % K_MAX)
    if isinstance(t, (Fraction, int)):
        acc = Fraction(0)
        tp = Fraction(1)
        for m in range(k + 1):
            acc += comb(k, m) * _numbers[k - m] * tp
            tp *= t
        return acc
    t = mpf(t) if not isinstance(t, (mpf, mpmath.mpc)) else t
    acc = mpmath.mpf(0)
    tp = mpmath.mpf(1)
    for m in range(k + 1):
        b = _numbers[k - m]
        if b:
            acc += mpf(b.numerator) / b.denominator * comb(k, m) * tp
        tp = tp * t
    return acc


class BernoulliTable:
    """Immutable view over the cached exact Bernoulli numbers."""

    def __init__(self, k_max: int = K_MAX):
        if k_max > K_MAX:
            raise PrecisionExceeded("Bernoulli numbers cached only up to k=%d" % K_MAX)
        _extend(k_max)
        self.k_max = k_max

    @property
    def numbers(self) -> tuple:
        return tuple(_numbers[: self.k_max + 1])

    def number(self, k: int) -> Fraction:
        if k > self.k_max:
            raise PrecisionExceeded("table built only up to k=%d" % self.k_max)
        return bernoulli_number(k)

    def poly(self, k: int, t):
        return bernoulli_poly(k, t)
