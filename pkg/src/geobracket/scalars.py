"""Exact complex scalars over the rationals.

Every symbolic coefficient in the package is a :class:`ComplexRational`, so
identities can be checked by structural equality instead of floating-point
closeness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions, rational strings like ``"3/2"`` to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"expected a rational value, got {type(value).__name__}")


@dataclass(frozen=True)
class ComplexRational:
    """A complex number with exact rational real and imaginary parts.

    ``Fraction`` keeps both parts reduced with a positive denominator, so
    equality is structural.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        if type(self.re) is not Fraction:
            object.__setattr__(self, "re", as_fraction(self.re))
        if type(self.im) is not Fraction:
            object.__setattr__(self, "im", as_fraction(self.im))

    def __hash__(self):
        # Fraction hashing is costly (modular inverse) and these values key
        # every term map, so cache it.
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash((self.re, self.im))
            object.__setattr__(self, "_hash", cached)
        return cached

    @staticmethod
    def coerce(value) -> "ComplexRational":
        if isinstance(value, ComplexRational):
            return value
        return ComplexRational(as_fraction(value))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        denom = other.re * other.re + other.im * other.im
        if denom == 0:
            raise ZeroDivisionError("division by zero ComplexRational")
        return ComplexRational(
            (self.re * other.re + self.im * other.im) / denom,
            (self.im * other.re - self.re * other.im) / denom,
        )

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    # -- predicates and views ---------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero

    def sort_key(self):
        return (self.re, self.im)

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"ComplexRational({self.re!r}, {self.im!r})"


ZERO = ComplexRational()
ONE = ComplexRational(Fraction(1))
I = ComplexRational(Fraction(0), Fraction(1))
MINUS_I = ComplexRational(Fraction(0), Fraction(-1))


def _coerce_or_none(value):
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, (int, Fraction, Rational)):
        return ComplexRational(as_fraction(value))
    return None


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


def format_scalar(z: ComplexRational) -> str:
    """Render in the DSL grammar, e.g. ``3/2``, ``-i``, ``1/2 + 3*i``."""
    if z.im == 0:
        return str(z.re)
    if z.re == 0:
        return _imag_str(z.im)
    sign = "+" if z.im > 0 else "-"
    return f"{z.re} {sign} {_imag_str(abs(z.im))}"


def scalar_needs_parens(z: ComplexRational) -> bool:
    """True when the rendering is a sum, so factor positions need parens."""
    return z.re != 0 and z.im != 0
