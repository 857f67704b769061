"""Precision contexts and error-carrying complex values.

Every public operation takes a PrecisionContext and reports its result as a
ComplexValue whose ``err`` field is an absolute error bound in the same
decimal scale as the requested digits.  Internally the modules compute with
mpmath reals at ``digits + guard_digits`` decimal places.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mpf, mpc

CERTIFIED = "certified"
HEURISTIC = "heuristic"


@dataclass(frozen=True)
class PrecisionContext:
    """Requested output digits plus guard digits for internal work."""

    digits: int = 15
    guard_digits: int = 10

    def __post_init__(self):
        if self.digits < 10:
            raise ValueError("PrecisionContext requires digits >= 10")
        if self.guard_digits < 0:
            raise ValueError("guard_digits must be non-negative")

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard_digits

    @property
    def eps(self) -> float:
        return 10.0 ** (-self.digits)

    def workdps(self, extra: int = 0):
        """mpmath context manager selecting the working precision."""
        return mpmath.workdps(self.working_digits + extra)

    def with_guard(self, extra: int) -> "PrecisionContext":
        return PrecisionContext(self.digits, self.guard_digits + extra)


DEFAULT_CTX = PrecisionContext()


def _combine_kind(*kinds: str) -> str:
    return CERTIFIED if all(k == CERTIFIED for k in kinds) else HEURISTIC


class ComplexValue:
    """A complex number with an absolute error bound.

    Arithmetic propagates ``err`` to first order and degrades ``err_kind``
    to heuristic as soon as any heuristic operand enters.
    """

    __slots__ = ("re", "im", "err", "err_kind")

    def __init__(self, re, im=0, err=0.0, err_kind=CERTIFIED):
        self.re = mpf(re) if not isinstance(re, mpf) else re
        self.im = mpf(im) if not isinstance(im, mpf) else im
        self.err = float(err)
        if self.err < 0:
            raise ValueError("err must be non-negative")
        if err_kind not in (CERTIFIED, HEURISTIC):
            raise ValueError("err_kind must be 'certified' or 'heuristic'")
        self.err_kind = err_kind

    @classmethod
    def from_mpc(cls, z, err=0.0, err_kind=CERTIFIED) -> "ComplexValue":
        if not isinstance(z, (mpc, mpf)):
            z = mpc(z)
        if isinstance(z, mpf):
            return cls(z, mpf(0), err, err_kind)
        return cls(z.real, z.imag, err, err_kind)

    @property
    def value(self) -> mpc:
        # exact combination; mpc(re, im) would round to the current precision
        return mpmath.make_mpc((self.re._mpf_, self.im._mpf_))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(self.value)

    def abs_value(self) -> "ComplexValue":
        return ComplexValue(abs(self.value), 0, self.err, self.err_kind)

    def conjugate(self) -> "ComplexValue":
        return ComplexValue(self.re, -self.im, self.err, self.err_kind)

    def _coerce(self, other):
        if isinstance(other, ComplexValue):
            return other
        return ComplexValue.from_mpc(mpc(other))

    def __add__(self, other):
        o = self._coerce(other)
        return ComplexValue.from_mpc(
            self.value + o.value, self.err + o.err, _combine_kind(self.err_kind, o.err_kind)
        )

    __radd__ = __add__

    def __neg__(self):
        return ComplexValue(-self.re, -self.im, self.err, self.err_kind)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        v = self.value * o.value
        err = abs(self.value) * o.err + abs(o.value) * self.err
        return ComplexValue.from_mpc(v, float(err), _combine_kind(self.err_kind, o.err_kind))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        denom = abs(o.value)
        if denom == 0:
            raise ZeroDivisionError("division by exact zero ComplexValue")
        v = self.value / o.value
        err = self.err / denom + abs(v) * o.err / denom
        return ComplexValue.from_mpc(v, float(err), _combine_kind(self.err_kind, o.err_kind))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __repr__(self):
        return "ComplexValue(%s, %s, err=%.3g, %s)" % (self.re, self.im, self.err, self.err_kind)

    def agrees_with(self, other, tol) -> bool:
        o = self._coerce(other)
        return abs(self.value - o.value) <= tol


def as_mpc(x) -> mpc:
    if isinstance(x, ComplexValue):
        return x.value
    return mpc(x)


def float_log10_abs(z) -> float:
    """log10|z| as a python float, safe for huge/tiny mpmath values."""
    a = abs(as_mpc(z))
    if a == 0:
        return -math.inf
    return float(mpmath.log10(a))
