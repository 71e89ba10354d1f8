"""Exact logarithms ``log_base(count)`` with integer-only comparisons."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import mpmath

from .errors import PrecisionError

_GUARD = mpmath.mpf("1e-12")


def _integer_root(x: int, k: int):
    """Exact k-th root of x when it is an integer, else None."""
    if x < 0:
        return None
    r = round(x ** (1.0 / k)) if x < 2 ** 1000 else None
    if r is None:
        lo, hi = 0, 1 << (x.bit_length() // k + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** k < x:
                lo = mid + 1
            else:
                hi = mid
        r = lo
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** k == x:
            return c
    return None


def _perfect_power(x: int):
    """Write x = r**e with e maximal; returns (r, e)."""
    if x < 2:
        return x, 1
    for e in range(x.bit_length(), 1, -1):
        r = _integer_root(x, e)
        if r is not None:
            return r, e
    return x, 1


@dataclass(frozen=True, order=False)
class LogValue:
    """The real number log_base(count), stored exactly as an integer pair."""

    count: int
    base: int

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if self.count < 0:
            raise ValueError(f"count must be >= 0, got {self.count}")

    def __float__(self):
        if self.count == 0:
            return float("-inf")
        return math.log(self.count) / math.log(self.base)

    def decimal(self, digits: int = 12) -> float:
        return round(float(self), digits)

    def exact_rational(self):
        """The value as a Fraction when it is rational, otherwise None."""
        if self.count == 0:
            return None
        if self.count == 1:
            return Fraction(0)
        r, _ = _perfect_power(self.base)
        # count must be a power of the same root r as the base
        a, c = 0, self.count
        while c % r == 0:
            c //= r
            a += 1
        if c != 1:
            return None
        b = 0
        c = self.base
        while c % r == 0:
            c //= r
            b += 1
        return Fraction(a, b)

    def is_integer(self) -> bool:
        q = self.exact_rational()
        return q is not None and q.denominator == 1

    def _cmp_rational(self, q: Fraction) -> int:
        if self.count == 0:
            return -1
        # log_s m vs p/q  <=>  m^q vs s^p
        p, d = q.numerator, q.denominator
        lhs = self.count ** d
        if p >= 0:
            rhs, lhs2 = self.base ** p, lhs
        else:
            rhs, lhs2 = 1, lhs * self.base ** (-p)
        return (lhs2 > rhs) - (lhs2 < rhs)

    def _cmp_log(self, other: "LogValue") -> int:
        if self.count == 0 or other.count == 0:
            return (self.count != 0) - (other.count != 0)
        if self.base == other.base:
            return (self.count > other.count) - (self.count < other.count)
        a, b = self.exact_rational(), other.exact_rational()
        if a is not None and b is not None:
            return (a > b) - (a < b)
        # log_s m vs log_t k  <=>  m^(log t) vs k^(log s); only exact when bases share a root
        rs, es = _perfect_power(self.base)
        rt, et = _perfect_power(other.base)
        if rs == rt:
            lhs, rhs = self.count ** et, other.count ** es
            return (lhs > rhs) - (lhs < rhs)
        with mpmath.workprec(256):
            diff = mpmath.log(self.count, self.base) - mpmath.log(other.count, other.base)
            if abs(diff) < _GUARD:
                raise PrecisionError(
                    f"log_{self.base}({self.count}) and log_{other.base}({other.count}) "
                    "are indistinguishable at 256-bit precision")
            return 1 if diff > 0 else -1

    def compare(self, other) -> int:
        """Three-way comparison with a LogValue, int or Fraction: -1, 0 or 1."""
        if isinstance(other, LogValue):
            return self._cmp_log(other)
        if isinstance(other, Rational):
            return self._cmp_rational(Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (LogValue, Rational)):
            try:
                return self.compare(other) == 0
            except PrecisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.count, self.base))

    def __lt__(self, other):
        c = self.compare(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self.compare(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self.compare(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self.compare(other)
        return c if c is NotImplemented else c >= 0

    def __str__(self):
        q = self.exact_rational()
        if q is not None:
            return str(q)
        return f"log_{self.base}({self.count})"

    def to_json(self) -> dict:
        return {"count": self.count, "base": self.base, "decimal": self.decimal()}


@dataclass(frozen=True)
class Complement:
    """The value ``n - log_base(count)``, e.g. a public guessing number."""

    n: int
    length: LogValue

    def __float__(self):
        return self.n - float(self.length)

    def compare(self, other) -> int:
        s, m = self.length.base, self.length.count
        if isinstance(other, LogValue) and other.base == s:
            # n - log m vs log k  <=>  s^n vs m k
            lhs, rhs = s ** self.n, m * other.count
            return (lhs > rhs) - (lhs < rhs)
        if isinstance(other, Rational):
            # n - log m vs p/q  <=>  log m vs n - p/q, reversed
            return -self.length.compare(self.n - Fraction(other))
        if isinstance(other, LogValue):
            with mpmath.workprec(256):
                diff = self.n - mpmath.log(m, s) - mpmath.log(other.count, other.base)
                if abs(diff) < _GUARD:
                    raise PrecisionError("values indistinguishable at 256-bit precision")
                return 1 if diff > 0 else -1
        if isinstance(other, Complement):
            if other.length.base == s:
                # s^n1 / m1 vs s^n2 / m2
                lhs = s ** self.n * other.length.count
                rhs = s ** other.n * m
                return (lhs > rhs) - (lhs < rhs)
            with mpmath.workprec(256):
                diff = (self.n - mpmath.log(m, s)) - (
                    other.n - mpmath.log(other.length.count, other.length.base))
                if abs(diff) < _GUARD:
                    raise PrecisionError("values indistinguishable at 256-bit precision")
                return 1 if diff > 0 else -1
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (LogValue, Rational, Complement)):
            return self.compare(other) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.length))

    def __lt__(self, other):
        c = self.compare(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self.compare(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self.compare(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self.compare(other)
        return c if c is NotImplemented else c >= 0

    def exact_rational(self):
        q = self.length.exact_rational()
        return None if q is None else self.n - q

    def to_json(self) -> dict:
        return {"n": self.n, "length": self.length.to_json(), "decimal": round(float(self), 12)}
