"""Complex scalars in exact-rational or floating-point mode."""

from __future__ import annotations

import math
import re as _re
from fractions import Fraction

_EXACT_TYPES = (int, Fraction)


class Coeff:
    """Complex scalar with an EXACT (rational) and a FLOAT mode.

    EXACT values store real and imaginary parts as `Fraction`s and are
    closed under +, -, *, / with no rounding.  Any operation mixing an
    EXACT with a FLOAT operand promotes to FLOAT; nothing promotes back.
    """

    __slots__ = ("re", "im", "exact")

    def __init__(self, re=0, im=0):
        if isinstance(re, complex):
            if im != 0:
                raise ValueError("complex real part with nonzero imaginary part")
            re, im = re.real, re.imag
        if isinstance(im, complex):
            raise ValueError("imaginary part must be real-valued")
        if isinstance(re, _EXACT_TYPES) and isinstance(im, _EXACT_TYPES):
            self.re = Fraction(re)
            self.im = Fraction(im)
            self.exact = True
        else:
            self.re = float(re)
            self.im = float(im)
            self.exact = False

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls):
        return _ZERO

    @classmethod
    def one(cls):
        return _ONE

    # -- predicates ------------------------------------------------------------

    @property
    def is_zero(self):
        return self.re == 0 and self.im == 0

    @property
    def is_real(self):
        return self.im == 0

    # -- arithmetic ------------------------------------------------------------

    def _pair(self, other):
        other = as_coeff(other)
        if self.exact and other.exact:
            return other, True
        return other, False

    def __add__(self, other):
        other, exact = self._pair(other)
        if exact:
            return Coeff(self.re + other.re, self.im + other.im)
        return Coeff(float(self.re) + float(other.re), float(self.im) + float(other.im))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_coeff(other))

    def __rsub__(self, other):
        return as_coeff(other) + (-self)

    def __neg__(self):
        return Coeff(-self.re, -self.im)

    def __mul__(self, other):
        other, exact = self._pair(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not exact:
            a, b, c, d = float(a), float(b), float(c), float(d)
        return Coeff(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other, exact = self._pair(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not exact:
            a, b, c, d = float(a), float(b), float(c), float(d)
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero coefficient")
        return Coeff((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        return as_coeff(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("coefficient powers take integer exponents")
        if n < 0:
            return _ONE / self ** (-n)
        result = _ONE if self.exact else Coeff(1.0, 0.0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self):
        return Coeff(self.re, -self.im)

    def abs2(self):
        """Squared modulus; a Fraction in EXACT mode, a float otherwise."""
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return math.sqrt(float(self.abs2()))

    # -- comparisons / conversion ------------------------------------------------

    def __eq__(self, other):
        try:
            other = as_coeff(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        # Fraction and float hash agree on equal values, so cross-mode
        # equality stays consistent with hashing.
        return hash((self.re, self.im))

    def to_complex(self):
        return complex(float(self.re), float(self.im))

    __complex__ = to_complex

    def __repr__(self):
        if self.exact:
            return f"Coeff({self.re!s}, {self.im!s})"
        return f"Coeff({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


_ZERO = Coeff(0)
_ONE = Coeff(1)

ZERO = _ZERO
ONE = _ONE


def as_coeff(value) -> Coeff:
    """Coerce an int/Fraction/float/complex/Coeff into a Coeff."""
    if isinstance(value, Coeff):
        return value
    if isinstance(value, _EXACT_TYPES):
        return Coeff(value)
    if isinstance(value, float):
        return Coeff(value)
    if isinstance(value, complex):
        return Coeff(value.real, value.imag)
    raise TypeError(f"cannot interpret {value!r} as a coefficient")


_RATIONAL = _re.compile(r"[+-]?\d+(?:/\d+)?$")


def parse_exact(text: str) -> Coeff:
    """Parse an exact rational-complex literal like ``1/2``, ``-1/3+2/5i``.

    Accepted forms: ``a/b``, ``a/b+c/di``, ``a/b-c/di``, ``c/di``, ``i``,
    ``-i`` (integers allowed wherever a rational is).
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty coefficient literal")
    if s[-1] in "iI":
        body = s[:-1]
        # split at the last sign that is not the leading sign
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        if cut > 0:
            re_part, im_part = body[:cut], body[cut:]
        else:
            re_part, im_part = "", body
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        re_part = re_part or "0"
        if not _RATIONAL.match(re_part) or not _RATIONAL.match(im_part):
            raise ValueError(f"malformed coefficient literal {text!r}")
        return Coeff(Fraction(re_part), Fraction(im_part))
    if not _RATIONAL.match(s):
        raise ValueError(f"malformed coefficient literal {text!r}")
    return Coeff(Fraction(s))


def coeff_to_strings(c: Coeff) -> tuple[str, str]:
    """EXACT coefficient as a ``("p/q", "p/q")`` pair for serialization."""
    if not c.exact:
        raise ValueError("only EXACT coefficients serialize as rational strings")
    return str(c.re), str(c.im)


def coeff_from_strings(re_s: str, im_s: str) -> Coeff:
    return Coeff(Fraction(re_s), Fraction(im_s))
