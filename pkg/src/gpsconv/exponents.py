"""Exact Gaussian-rational numbers.

One class serves both as power exponent (ordered by first difference:
real part first, then imaginary part) and as series coefficient.
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from math import isqrt
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction]


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _q(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact rational: {value!r}")


class GaussQ:
    """Immutable element of Q + Q*i."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: Scalar | str = 0, im: Scalar | str = 0):
        object.__setattr__(self, "re", _q(re))
        object.__setattr__(self, "im", _q(im))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("GaussQ is immutable")

    @classmethod
    def coerce(cls, value) -> "GaussQ":
        if isinstance(value, GaussQ):
            return value
        if isinstance(value, complex):
            raise TypeError("float complex values are not exact")
        return cls(_q(value), 0)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        try:
            other = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussQ(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussQ(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussQ.coerce(other) - self

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussQ(self.re * other, self.im * other)
        try:
            other = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussQ(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussQ.coerce(other)
        d = other.sq_modulus()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussQ((self.re * other.re + self.im * other.im) / d,
                      (self.im * other.re - self.re * other.im) / d)

    def __rtruediv__(self, other):
        return GaussQ.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussQ(1) / self ** (-k)
        result, base = GaussQ(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    def sq_modulus(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    # -- order by first difference ------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussQ):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.re, self.im)) if self.im else hash(self.re)
            object.__setattr__(self, "_hash", h)
        return h

    def _key(self):
        return (self.re, self.im)

    def __lt__(self, other):
        return self._key() < GaussQ.coerce(other)._key()

    def __le__(self, other):
        return self._key() <= GaussQ.coerce(other)._key()

    def __gt__(self, other):
        return self._key() > GaussQ.coerce(other)._key()

    def __ge__(self, other):
        return self._key() >= GaussQ.coerce(other)._key()

    # -- conversions ----------------------------------------------------
    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussQ({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, data) -> "GaussQ":
        if isinstance(data, dict):
            return cls(_q(str(data.get("re", "0"))), _q(str(data.get("im", "0"))))
        if isinstance(data, (list, tuple)) and len(data) == 2:
            return cls(_q(str(data[0])), _q(str(data[1])))
        if isinstance(data, (int, str)):
            return cls(_q(data))
        raise ValueError(f"cannot read Gaussian rational from {data!r}")


ComplexExponent = GaussQ
ZERO = GaussQ(0)
ONE = GaussQ(1)
I = GaussQ(0, 1)


def cmp(a: GaussQ, b: GaussQ) -> Ordering:
    ka, kb = a._key(), b._key()
    if ka < kb:
        return Ordering.LESS
    if ka > kb:
        return Ordering.GREATER
    return Ordering.EQUAL


def is_positive(a: GaussQ) -> bool:
    return cmp(a, ZERO) is Ordering.GREATER


def sq_modulus(a: GaussQ) -> Fraction:
    return a.sq_modulus()


# -- directed rational square roots ---------------------------------------

def sqrt_lower(x: Fraction, bits: int = 64) -> Fraction:
    """Largest k/2**bits with (k/2**bits)**2 <= x."""
    x = _q(x)
    if x < 0:
        raise ValueError("negative argument")
    if x == 0:
        return Fraction(0)
    r = _exact_sqrt(x)
    if r is not None:
        return r
    scale = 1 << bits
    k = isqrt(x.numerator * scale * scale // x.denominator)
    return Fraction(k, scale)


def sqrt_upper(x: Fraction, bits: int = 64) -> Fraction:
    x = _q(x)
    if x < 0:
        raise ValueError("negative argument")
    r = _exact_sqrt(x)
    if r is not None:
        return r
    lo = sqrt_lower(x, bits)
    return lo + Fraction(1, 1 << bits)


def _exact_sqrt(x: Fraction):
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def abs_upper(z: GaussQ, bits: int = 64) -> Fraction:
    return sqrt_upper(z.sq_modulus(), bits)


def abs_lower(z: GaussQ, bits: int = 64) -> Fraction:
    return sqrt_lower(z.sq_modulus(), bits)


def min_exp(a, b):
    """Minimum under first difference; None stands for +infinity."""
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


def add_exp(a, b):
    if a is None or b is None:
        return None
    return a + b
