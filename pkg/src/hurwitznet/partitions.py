"""Partitions, conjugacy-class data and content products, all exact.

A partition is a plain tuple of weakly decreasing positive ints; the empty
tuple is the empty partition.  All quantities here are integers or
Fractions -- floating point never appears in this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence, Tuple

from .errors import ZeroDenominatorContent
from .exact import GaussianRational  # re-exported: the exact scalar of the package

__all__ = [
    "Partition", "GaussianRational", "ContentProductSpec",
    "partition", "enumerate_partitions", "weight", "length",
    "z_of", "class_size", "conjugate", "content_product",
    "rational_content_weight", "partition_to_json", "partition_from_json",
]

Partition = Tuple[int, ...]


def partition(parts: Iterable[int]) -> Partition:
    """Validate and canonicalize a partition (strips nothing, rejects junk)."""
    t = tuple(int(p) for p in parts)
    if any(p < 1 for p in t):
        raise ValueError(f"partition parts must be positive: {t}")
    if any(t[i] < t[i + 1] for i in range(len(t) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {t}")
    return t


def weight(lam: Partition) -> int:
    return sum(lam)


def length(lam: Partition) -> int:
    return len(lam)


@lru_cache(maxsize=None)
def enumerate_partitions(d: int) -> Tuple[Partition, ...]:
    """All partitions of d in reverse-lexicographic order: (d) first, (1^d) last."""
    if d < 0:
        raise ValueError("d must be nonnegative")

    def rec(remaining: int, max_part: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, max_part), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return tuple(rec(d, d))


def multiplicities(lam: Partition) -> dict:
    m: dict = {}
    for p in lam:
        m[p] = m.get(p, 0) + 1
    return m


def z_of(delta: Partition) -> int:
    """z_Delta = prod_i i^{m_i} m_i! over part multiplicities m_i."""
    z = 1
    for part, m in multiplicities(delta).items():
        z *= part ** m * factorial(m)
    return z


def class_size(delta: Partition) -> int:
    """|C_Delta| = d!/z_Delta, the size of the conjugacy class in S_d."""
    return factorial(weight(delta)) // z_of(delta)


def conjugate(lam: Partition) -> Partition:
    """Transpose of the Young diagram."""
    if not lam:
        return ()
    cols = lam[0]
    return tuple(sum(1 for p in lam if p >= j) for j in range(1, cols + 1))


def cells(lam: Partition):
    """Diagram nodes (i, j), rows i and columns j both 1-based."""
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            yield i, j


def content_product(x, lam: Partition) -> Fraction:
    """(x)_lambda = prod over nodes (i,j) of (x + j - i)."""
    out = Fraction(1)
    for i, j in cells(lam):
        out *= Fraction(x) + (j - i)
    return out


@dataclass(frozen=True)
class ContentProductSpec:
    """Rational content-product data r_lambda = prod (a_i)_lam / prod (b_i)_lam.

    ``shift`` is added to every parameter before the content products are
    taken; with empty parameter lists this is the constant weight r == 1.
    """

    numerator_params: Tuple[Fraction, ...] = ()
    denominator_params: Tuple[Fraction, ...] = ()
    shift: Fraction = field(default_factory=lambda: Fraction(0))

    @staticmethod
    def of(a: Sequence = (), b: Sequence = (), shift=0) -> "ContentProductSpec":
        return ContentProductSpec(tuple(Fraction(x) for x in a),
                                  tuple(Fraction(x) for x in b),
                                  Fraction(shift))

    @property
    def is_trivial(self) -> bool:
        return not self.numerator_params and not self.denominator_params


TRIVIAL_CONTENT = ContentProductSpec()


def rational_content_weight(spec: ContentProductSpec, lam: Partition) -> Fraction:
    """Evaluate r_lambda for a rational spec; empty spec gives 1."""
    num = Fraction(1)
    for a in spec.numerator_params:
        num *= content_product(a + spec.shift, lam)
    den = Fraction(1)
    for b in spec.denominator_params:
        den *= content_product(b + spec.shift, lam)
    if not den:
        raise ZeroDenominatorContent(
            f"denominator content product vanished on {lam}")
    return num / den


def partition_to_json(lam: Partition) -> list:
    return list(lam)


def partition_from_json(data: Sequence[int]) -> Partition:
    return partition(data)
