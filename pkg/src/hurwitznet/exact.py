"""Exact Gaussian-rational scalars and small dense matrices.

Everything outside the Monte Carlo lanes is exact: scalars are
``fractions.Fraction`` or :class:`GaussianRational` (a + bi with rational
a, b), and matrices are tuples of tuples of GaussianRational.  No floating
point enters any identity check.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .errors import DimensionMismatch

RationalLike = Union[int, Fraction]


class GaussianRational:
    """Exact complex number with Fraction real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- conversions ---------------------------------------------------

    @staticmethod
    def of(value) -> "GaussianRational":
        """Coerce an int, Fraction or GaussianRational."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        raise TypeError(f"cannot coerce {value!r} to GaussianRational")

    def to_complex(self) -> complex:
        return float(self.re) + 1j * float(self.im)

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_rational(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.of(other)
        norm = o.re * o.re + o.im * o.im
        if not norm:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational((self.re * o.re + self.im * o.im) / norm,
                                (self.im * o.re - self.re * o.im) / norm)

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError("GaussianRational powers must be integers")
        if exponent < 0:
            return 1 / (self ** (-exponent))
        result = GaussianRational(1)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- equality --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)

Matrix = tuple  # tuple of row-tuples of GaussianRational


def matrix(rows: Sequence[Sequence]) -> Matrix:
    """Build an exact square matrix, coercing entries."""
    out = tuple(tuple(GaussianRational.of(x) for x in row) for row in rows)
    n = len(out)
    if any(len(row) != n for row in out):
        raise DimensionMismatch("matrix must be square")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(GR_ONE if i == j else GR_ZERO for j in range(n))
                 for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    if len(b) != n:
        raise DimensionMismatch(f"cannot multiply {n}x{n} by {len(b)}x{len(b)}")
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), GR_ZERO) for col in bt)
        for row in a)


def mat_trace(a: Matrix) -> GaussianRational:
    return sum((a[i][i] for i in range(len(a))), GR_ZERO)


def mat_power_sums(a: Matrix, kmax: int) -> list:
    """[tr a, tr a^2, ..., tr a^kmax]."""
    sums = []
    power = a
    for _ in range(kmax):
        sums.append(mat_trace(power))
        power = mat_mul(power, a)
    return sums


def mat_scale(a: Matrix, c) -> Matrix:
    cg = GaussianRational.of(c)
    return tuple(tuple(cg * x for x in row) for row in a)


def mat_to_complex(a: Matrix):
    """Dense complex copy for the Monte Carlo lanes (numpy array)."""
    import numpy as np

    return np.array([[x.to_complex() for x in row] for row in a], dtype=complex)


def det_exact(rows: Sequence[Sequence[GaussianRational]]) -> GaussianRational:
    """Determinant by minor expansion memoized over column subsets.

    Fine for the orders used here (Jacobi-Trudi matrices of size <= ~12).
    """
    n = len(rows)
    if n == 0:
        return GR_ONE
    cache = {}

    def minor(row: int, cols: int) -> GaussianRational:
        if row == n:
            return GR_ONE
        key = cols
        hit = cache.get(key)
        if hit is not None:
            return hit
        total = GR_ZERO
        sign = 1  # parity of the column's rank within the active set
        for j in range(n):
            if not (cols >> j) & 1:
                continue
            entry = rows[row][j]
            if entry:
                sub = minor(row + 1, cols & ~(1 << j))
                term = entry * sub
                total = total + term if sign > 0 else total - term
            sign = -sign
        cache[key] = total
        return total

    return minor(0, (1 << n) - 1)
