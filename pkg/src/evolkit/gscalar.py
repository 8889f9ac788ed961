"""Exact Gaussian rationals: complex numbers with rational real and imaginary parts."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import InvalidInputError

_RAT = r"\d+(?:/\d+)?"
_IMAG_RE = re.compile(rf"^(?P<im>[+-]?(?:{_RAT})?)i$")
_FULL_RE = re.compile(rf"^(?P<re>[+-]?{_RAT})(?:(?P<im>[+-](?:{_RAT})?)i)?$")


def _parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise InvalidInputError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


class GScalar:
    """An immutable element of Q(i).

    Arithmetic accepts ints and Fractions on either side. Equality and hashing
    agree with ``Fraction`` for purely real values, so ``GScalar(1, 2) == Fraction(1, 2)``
    is false but ``GScalar(Fraction(1, 2)) == Fraction(1, 2)`` is true.
    """

    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0) -> None:
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> GScalar:
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GScalar is immutable")

    def __reduce__(self):
        return (GScalar, (self.re, self.im))

    @classmethod
    def coerce(cls, value) -> GScalar:
        if isinstance(value, GScalar):
            return value
        if isinstance(value, (int, Rational)):
            return cls._raw(Fraction(value), _ZERO_F)
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, complex):
            raise InvalidInputError("floating-point complex values are not exact; pass a GScalar")
        raise InvalidInputError(f"cannot interpret {value!r} as an exact scalar")

    @classmethod
    def parse(cls, text: str) -> GScalar:
        """Parse ``"p"``, ``"p/q"``, ``"p/q+r/si"``, ``"-i"`` and similar forms."""
        s = text.replace(" ", "")
        m = _IMAG_RE.match(s) or _FULL_RE.match(s)
        if m is None:
            raise InvalidInputError(f"malformed scalar {text!r}")
        groups = m.groupdict()
        re_part = _parse_rational(groups["re"]) if groups.get("re") else _ZERO_F
        im_text = groups.get("im")
        if im_text is None:
            im_part = _ZERO_F
        elif im_text in ("", "+"):
            im_part = Fraction(1)
        elif im_text == "-":
            im_part = Fraction(-1)
        else:
            im_part = _parse_rational(im_text)
        return cls._raw(re_part, im_part)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> GScalar:
        return GScalar._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    # arithmetic

    def __add__(self, other):
        try:
            o = GScalar.coerce(other)
        except InvalidInputError:
            return NotImplemented
        return GScalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = GScalar.coerce(other)
        except InvalidInputError:
            return NotImplemented
        return GScalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = GScalar.coerce(other)
        except InvalidInputError:
            return NotImplemented
        return GScalar._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        try:
            o = GScalar.coerce(other)
        except InvalidInputError:
            return NotImplemented
        if not self.im and not o.im:
            return GScalar._raw(self.re * o.re, _ZERO_F)
        return GScalar._raw(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GScalar.coerce(other)
        except InvalidInputError:
            return NotImplemented
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero GScalar")
            return GScalar._raw(self.re / o.re, self.im / o.re)
        d = o.norm()
        return GScalar._raw(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        try:
            o = GScalar.coerce(other)
        except InvalidInputError:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> GScalar:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self) -> GScalar:
        return GScalar._raw(-self.re, -self.im)

    def __pos__(self) -> GScalar:
        return self

    def __abs__(self) -> float:
        return abs(complex(self))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GScalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        else:
            im = f"{self.im}i"
        if not self.re:
            return im
        sign = "" if im.startswith("-") else "+"
        return f"{self.re}{sign}{im}"

    def __repr__(self) -> str:
        return f"GScalar({str(self)!r})"


_ZERO_F = Fraction(0)
ZERO = GScalar._raw(Fraction(0), Fraction(0))
ONE = GScalar._raw(Fraction(1), Fraction(0))
I = GScalar._raw(Fraction(0), Fraction(1))


def gs(value) -> GScalar:
    """Shorthand coercion used throughout the package and the tests."""
    return GScalar.coerce(value)
