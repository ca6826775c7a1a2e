"""Normal-ordered linear differential operators.

A :class:`DiffOp` is ``sum_alpha c_alpha(x) d^alpha`` with coefficient
functions always written to the left of derivatives.  Composition applies
the generalized Leibniz rule

    d^alpha (c .) = sum_{beta <= alpha} binom(alpha, beta) (d^beta c) d^{alpha-beta}

so products land back in normal form with a unique canonical representation.
Operator order grows additively under composition, which bounds (and
explains) term blow-up in nested brackets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch
from .functions import CoefFn, const, coord, one, zero
from .scalars import ComplexRational

_CR_MINUS_I = ComplexRational(0, -1)


def _multi_binom(alpha, beta) -> int:
    return math.prod(math.comb(a, b) for a, b in zip(alpha, beta))


def _sub_indices(alpha):
    """All multi-indices beta with beta <= alpha componentwise."""
    return itertools.product(*(range(a + 1) for a in alpha))


@dataclass(frozen=True)
class DiffOp:
    """Canonical-form differential operator over ``dim`` coordinates."""

    dim: int
    terms: dict

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        clean = {}
        for alpha, coeff in self.terms.items():
            alpha = tuple(alpha)
            if len(alpha) != self.dim:
                raise ValueError("derivative multi-index length does not match dim")
            if any(a < 0 for a in alpha):
                raise ValueError("derivative orders must be non-negative")
            if coeff.dim != self.dim:
                raise DimensionMismatch(
                    "coefficient dimension does not match operator dimension"
                )
            if not coeff.is_zero:
                clean[alpha] = coeff
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _wrap(cls, dim: int, clean_terms: dict) -> "DiffOp":
        """Internal constructor for term maps already in canonical form."""
        out = object.__new__(cls)
        object.__setattr__(out, "dim", dim)
        object.__setattr__(out, "terms", clean_terms)
        return out

    # -- linear structure ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check_dim(other)
        acc = dict(self.terms)
        for alpha, coeff in other.terms.items():
            total = acc.get(alpha)
            total = coeff if total is None else total + coeff
            if total.is_zero:
                acc.pop(alpha, None)
            else:
                acc[alpha] = total
        return DiffOp._wrap(self.dim, acc)

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DiffOp._wrap(self.dim, {a: -c for a, c in self.terms.items()})

    def scaled(self, value) -> "DiffOp":
        value = ComplexRational.coerce(value)
        if not value:
            return DiffOp._wrap(self.dim, {})
        return DiffOp._wrap(self.dim, {a: c.scaled(value) for a, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return compose(self, other)
        if isinstance(other, (int, Fraction, ComplexRational)):
            return self.scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ComplexRational)):
            return self.scaled(other)
        return NotImplemented

    # -- action -------------------------------------------------------------

    def __call__(self, psi: CoefFn) -> CoefFn:
        """Apply to a coefficient function: ``sum_alpha c_alpha * d^alpha psi``."""
        if psi.dim != self.dim:
            raise DimensionMismatch(
                f"operator over {self.dim} coordinates applied to function over {psi.dim}"
            )
        out = zero(self.dim)
        for alpha, coeff in self.terms.items():
            out = out + coeff * psi.diff_multi(alpha)
        return out

    # -- views ---------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def order(self) -> int:
        return max((sum(alpha) for alpha in self.terms), default=0)

    def coefficient(self, alpha) -> CoefFn:
        return self.terms.get(tuple(alpha), zero(self.dim))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0])

    def _check_dim(self, other: "DiffOp"):
        if self.dim != other.dim:
            raise DimensionMismatch(
                f"operators over {self.dim} and {other.dim} coordinates"
            )

    def __str__(self) -> str:
        from .printing import format_diff_op

        return format_diff_op(self)

    def __repr__(self) -> str:
        return f"DiffOp({self.dim}, {self!s})"


# -- constructors -------------------------------------------------------------


def identity(dim: int) -> DiffOp:
    return DiffOp(dim, {(0,) * dim: one(dim)})


def zero_op(dim: int) -> DiffOp:
    return DiffOp(dim, {})


def mult(f: CoefFn) -> DiffOp:
    """The multiplication operator ``psi -> f * psi``."""
    return DiffOp(f.dim, {(0,) * f.dim: f})


def scalar_op(dim: int, value) -> DiffOp:
    return mult(const(dim, value))


def partial_d(dim: int, axis: int = 0, order: int = 1) -> DiffOp:
    if not 0 <= axis < dim:
        raise IndexError(f"axis {axis} out of range for dim {dim}")
    alpha = tuple(order if j == axis else 0 for j in range(dim))
    return DiffOp(dim, {alpha: one(dim)})


def derivative(dim: int, alpha) -> DiffOp:
    return DiffOp(dim, {tuple(alpha): one(dim)})


def position(dim: int, axis: int = 0) -> DiffOp:
    """Multiplication by the coordinate ``x_axis``."""
    return mult(coord(dim, axis))


def momentum(dim: int, axis: int = 0, hbar=1) -> DiffOp:
    """The flat momentum operator ``-i hbar d_axis``."""
    hbar = Fraction(hbar) if not isinstance(hbar, Fraction) else hbar
    return partial_d(dim, axis).scaled(ComplexRational(0, -hbar))


# -- algebra -------------------------------------------------------------------


def compose(a: DiffOp, b: DiffOp) -> DiffOp:
    """Operator product ``a b`` in normal form."""
    a._check_dim(b)
    dim = a.dim
    acc: dict = {}
    for beta, cb in b.terms.items():
        derivs = {(0,) * dim: cb}

        def deriv_of(gamma, _derivs=derivs):
            cached = _derivs.get(gamma)
            if cached is None:
                axis = next(i for i, g in enumerate(gamma) if g)
                parent = tuple(
                    g - 1 if i == axis else g for i, g in enumerate(gamma)
                )
                cached = deriv_of(parent).diff(axis)
                _derivs[gamma] = cached
            return cached

        for alpha, ca in a.terms.items():
            for gamma in _sub_indices(alpha):
                deriv = deriv_of(gamma)
                if deriv.is_zero:
                    continue
                weight = _multi_binom(alpha, gamma)
                key = tuple(al - g + be for al, g, be in zip(alpha, gamma, beta))
                piece = ca * deriv
                if weight != 1:
                    piece = piece.scaled(weight)
                total = acc.get(key)
                total = piece if total is None else total + piece
                if total.is_zero:
                    acc.pop(key, None)
                else:
                    acc[key] = total
    return DiffOp._wrap(dim, acc)


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    """The plain operator commutator ``a b - b a``."""
    return compose(a, b) - compose(b, a)
