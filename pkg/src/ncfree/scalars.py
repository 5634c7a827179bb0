"""Exact complex scalars with rational real and imaginary parts.

All symbolic identities in this package are exact equalities, so the
coefficient field is represented without any floating point: a scalar is a
pair of arbitrary-precision rationals.  Floats only appear at the very end,
when a value is handed to the numerical modules.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

_RatLike = int | Fraction


class Scalar:
    """A complex number a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re: _RatLike = 0, im: _RatLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def coerce(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented  # defer to the other operand's __radd__
        other = Scalar.coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return Scalar.coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented  # defer to the other operand's __rmul__
        other = Scalar.coerce(other)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    # -- predicates / conversions ---------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # -- text form -------------------------------------------------------
    # Grammar: `a/b` for real scalars, `a/b+c/d i` (or `a/b-c/d i`) otherwise.

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)} i"

    def __repr__(self):
        return f"Scalar({self.re!r}, {self.im!r})"

    _PATTERN = _re.compile(
        r"^(?P<re>-?\d+(?:/\d+)?)(?:(?P<sign>[+-])(?P<im>\d+(?:/\d+)?) ?i)?$"
    )

    @staticmethod
    def parse(text: str) -> "Scalar":
        m = Scalar._PATTERN.match(text.strip())
        if m is None:
            raise ValueError(f"malformed scalar: {text!r}")
        re_part = Fraction(m.group("re"))
        if m.group("im") is None:
            return Scalar(re_part)
        im_part = Fraction(m.group("im"))
        if m.group("sign") == "-":
            im_part = -im_part
        return Scalar(re_part, im_part)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
