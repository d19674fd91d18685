"""Hyperbolic octonions: the 8-dimensional algebra and its schoolbook product.

Elements live over the ordered basis ``(1, e1, e2, e3, E4, E5, E6, E7)``: the
first three imaginary units square to -1, the last four "counterimaginary"
units square to +1, and the algebra is neither commutative nor associative.

Two independent descriptions of the product are kept side by side on purpose:

* :func:`mul_naive` spells out the eight coordinate formulas (the canonical
  definition, 64 scalar multiplications and 56 additions);
* :data:`basis_mul` / :func:`schoolbook_matrix` encode the unit table and the
  left-multiplication matrix.

Tests pin the three views to each other; the fast kernel is certified against
:func:`schoolbook_matrix`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Sequence

from .linform import LinForm, SymMatrix


class BasisProduct(NamedTuple):
    """Product of two basis units: ``sign * unit[index]``."""
    sign: int
    index: int


# Unit products for the seven imaginary/counterimaginary units, row = left
# factor e_i, column = right factor e_j, entry = (sign, index).  Row/column 0
# (the scalar unit) is handled by unitality in basis_mul.
_UNIT_TABLE = (
    ((-1, 0), (1, 3), (-1, 2), (1, 5), (1, 4), (-1, 7), (1, 6)),
    ((-1, 3), (-1, 0), (1, 1), (1, 6), (1, 7), (1, 4), (-1, 5)),
    ((1, 2), (-1, 1), (-1, 0), (1, 7), (-1, 6), (1, 5), (1, 4)),
    ((-1, 5), (-1, 6), (-1, 7), (1, 0), (1, 1), (1, 2), (1, 3)),
    ((-1, 4), (-1, 7), (1, 6), (-1, 1), (1, 0), (1, 3), (-1, 2)),
    ((1, 7), (-1, 4), (-1, 5), (-1, 2), (-1, 3), (1, 0), (1, 1)),
    ((-1, 6), (1, 5), (-1, 4), (-1, 3), (1, 2), (-1, 1), (1, 0)),
)


def basis_mul(i: int, j: int) -> BasisProduct:
    """Product of basis units ``unit(i) * unit(j)`` as a signed unit.

    Args:
        i: index of the left unit, 0..7.
        j: index of the right unit, 0..7.
    """
    if not (0 <= i < 8 and 0 <= j < 8):
        raise ValueError(f"unit index out of range: ({i}, {j})")
    if i == 0:
        return BasisProduct(1, j)
    if j == 0:
        return BasisProduct(1, i)
    sign, index = _UNIT_TABLE[i - 1][j - 1]
    return BasisProduct(sign, index)


class Octo:
    """A hyperbolic octonion as an immutable 8-tuple of coefficients.

    Coefficients are either exact (int / Fraction) or float; float
    coefficients must be finite.  Scalar-like wrapper objects (e.g. the
    instrumented counters) pass through untouched.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence):
        c = tuple(coeffs)
        if len(c) != 8:
            raise ValueError(f"expected 8 coefficients, got {len(c)}")
        for v in c:
            if isinstance(v, float) and not math.isfinite(v):
                raise ValueError(f"non-finite coefficient: {v!r}")
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Octo is immutable")

    # ---- constructors ----

    @classmethod
    def zero(cls) -> "Octo":
        return cls((0,) * 8)

    @classmethod
    def one(cls) -> "Octo":
        return cls.unit(0)

    @classmethod
    def unit(cls, i: int) -> "Octo":
        c = [0] * 8
        c[i] = 1
        return cls(c)

    @classmethod
    def from_text(cls, text: str, mode: str = "exact") -> "Octo":
        """Parse the canonical text form: 8 comma-separated coefficients.

        ``exact`` mode accepts integers and ``p/q`` rationals; ``float`` mode
        accepts decimal numbers.
        """
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 8:
            raise ValueError(f"expected 8 comma-separated values, got {len(parts)}")
        if mode == "exact":
            return cls(tuple(Fraction(p) for p in parts))
        if mode == "float":
            return cls(tuple(float(p) for p in parts))
        raise ValueError(f"unknown mode: {mode!r}")

    def to_text(self) -> str:
        return ",".join(str(v) for v in self.c)

    # ---- linear structure ----

    def __add__(self, other: "Octo") -> "Octo":
        return Octo(tuple(a + b for a, b in zip(self.c, other.c)))

    def __sub__(self, other: "Octo") -> "Octo":
        return Octo(tuple(a - b for a, b in zip(self.c, other.c)))

    def __neg__(self) -> "Octo":
        return Octo(tuple(-a for a in self.c))

    def scale(self, alpha) -> "Octo":
        return Octo(tuple(alpha * a for a in self.c))

    def __eq__(self, other):
        if not isinstance(other, Octo):
            return NotImplemented
        return all(a == b for a, b in zip(self.c, other.c))

    def __hash__(self):
        return hash(self.c)

    def __iter__(self):
        return iter(self.c)

    def __repr__(self):
        return f"Octo({self.to_text()})"


def mul_naive(x: Octo, b: Octo) -> Octo:
    """Schoolbook product ``x * b`` via the eight coordinate formulas."""
    x0, x1, x2, x3, x4, x5, x6, x7 = x.c
    b0, b1, b2, b3, b4, b5, b6, b7 = b.c
    return Octo((
        x0*b0 - x1*b1 - x2*b2 - x3*b3 + x4*b4 + x5*b5 + x6*b6 + x7*b7,
        x0*b1 + x1*b0 + x2*b3 - x3*b2 + x4*b5 - x5*b4 + x6*b7 - x7*b6,
        x0*b2 - x1*b3 + x2*b0 + x3*b1 + x4*b6 - x5*b7 - x6*b4 + x7*b5,
        x0*b3 + x1*b2 - x2*b1 + x3*b0 + x4*b7 + x5*b6 - x6*b5 - x7*b4,
        x0*b4 + x1*b5 + x2*b6 + x3*b7 + x4*b0 - x5*b1 - x6*b2 - x7*b3,
        x0*b5 + x1*b4 - x2*b7 + x3*b6 - x4*b1 + x5*b0 - x6*b3 + x7*b2,
        x0*b6 + x1*b7 + x2*b4 - x3*b5 - x4*b2 + x5*b3 + x6*b0 - x7*b1,
        x0*b7 - x1*b6 + x2*b5 + x3*b4 - x4*b3 - x5*b2 + x6*b1 + x7*b0,
    ))


# Left-multiplication matrix: row r, column c holds the coefficient of x_c in
# the formula for y_r, as (b-index, sign).  Kept as a separate literal from
# mul_naive so the two can cross-check each other.
_MATRIX_ENTRIES = (
    ((0, 1), (1, -1), (2, -1), (3, -1), (4, 1), (5, 1), (6, 1), (7, 1)),
    ((1, 1), (0, 1), (3, 1), (2, -1), (5, 1), (4, -1), (7, 1), (6, -1)),
    ((2, 1), (3, -1), (0, 1), (1, 1), (6, 1), (7, -1), (4, -1), (5, 1)),
    ((3, 1), (2, 1), (1, -1), (0, 1), (7, 1), (6, 1), (5, -1), (4, -1)),
    ((4, 1), (5, 1), (6, 1), (7, 1), (0, 1), (1, -1), (2, -1), (3, -1)),
    ((5, 1), (4, 1), (7, -1), (6, 1), (1, -1), (0, 1), (3, -1), (2, 1)),
    ((6, 1), (7, 1), (4, 1), (5, -1), (2, -1), (3, 1), (0, 1), (1, -1)),
    ((7, 1), (6, -1), (5, 1), (4, 1), (3, -1), (2, -1), (1, 1), (0, 1)),
)


def schoolbook_matrix() -> SymMatrix:
    """The 8x8 left-multiplication matrix with symbolic entries.

    ``schoolbook_matrix().evaluate(b.c)`` applied to ``x.c`` reproduces
    ``mul_naive(x, b)`` exactly; the fast kernel is certified against this
    matrix.
    """
    return SymMatrix([[LinForm.var(idx, sign) for idx, sign in row]
                      for row in _MATRIX_ENTRIES])


def quadratic_form(x: Octo):
    """Signature-(4,4) form: squares of the first four coefficients minus
    squares of the last four.

    Equals the scalar part of ``x * conj(x)`` (all other parts vanish), but it
    is **not** multiplicative for this algebra — ``quadratic_form(mul(x, y))``
    generally differs from the product of the forms.
    """
    c = x.c
    return (c[0]*c[0] + c[1]*c[1] + c[2]*c[2] + c[3]*c[3]
            - c[4]*c[4] - c[5]*c[5] - c[6]*c[6] - c[7]*c[7])
