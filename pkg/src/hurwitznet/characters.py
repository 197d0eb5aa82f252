"""Irreducible S_d characters and exact Schur-polynomial evaluation.

Characters come from the Murnaghan-Nakayama recursion over border strips,
memoized globally.  The memo is a plain dict populated under the GIL
(atomic writes of immutable values), so concurrent readers are safe; for
up-front population use :meth:`CharacterTable.for_weight`.

Schur values are computed from power sums: the generating function
exp(sum_m p_m z^m / m) defines the one-row values s_(k), and the general
value is the Jacobi-Trudi determinant det(s_(lambda_i - i + j)).  An
independent character-expansion evaluator is kept alongside for
cross-checking.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Optional, Sequence, Tuple

from .errors import SingularSpecialization, TruncationTooSmall, WeightMismatch
from .exact import GR_ONE, GR_ZERO, GaussianRational, Matrix, det_exact, mat_power_sums
from .partitions import (Partition, class_size, content_product,
                         enumerate_partitions, partition, weight, z_of)

__all__ = [
    "PowerSumPoint", "CharacterTable", "character", "dimension", "phi",
    "chi_sqrt", "schur_at", "schur_at_via_characters", "schur_special",
    "schur_of_matrix", "complete_homogeneous",
]


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------

_char_cache: Dict[Tuple[Partition, Partition], int] = {}


def character(lam, delta) -> int:
    """chi_lambda(Delta), exact integer."""
    lam = partition(lam)
    delta = partition(delta)
    if weight(lam) != weight(delta):
        raise WeightMismatch(f"|{lam}| != |{delta}|")
    return _mn(lam, delta)


def _mn(lam: Partition, delta: Partition) -> int:
    if not delta:
        return 1
    key = (lam, delta)
    hit = _char_cache.get(key)
    if hit is not None:
        return hit
    strip = delta[0]
    rest = delta[1:]
    m = len(lam)
    # beta set h_i = lam_i + (m-1-i), strictly decreasing
    hs = [lam[i] + (m - 1 - i) for i in range(m)]
    hset = set(hs)
    total = 0
    for h in hs:
        h2 = h - strip
        if h2 < 0 or h2 in hset:
            continue
        height = sum(1 for x in hs if h2 < x < h)
        nhs = sorted((x for x in hs if x != h), reverse=True)
        nhs.append(h2)
        nhs.sort(reverse=True)
        nlam = tuple(v - (m - 1 - i) for i, v in enumerate(nhs))
        nlam = tuple(p for p in nlam if p > 0)
        total += (-1) ** height * _mn(nlam, rest)
    _char_cache[key] = total
    return total


def dimension(lam) -> int:
    """dim lambda = chi_lambda((1^d))."""
    lam = partition(lam)
    d = weight(lam)
    return _mn(lam, (1,) * d)


def phi(lam, delta) -> Fraction:
    """phi_lambda(Delta) = |C_Delta| chi_lambda(Delta) / dim lambda."""
    lam = partition(lam)
    delta = partition(delta)
    if weight(lam) != weight(delta):
        raise WeightMismatch(f"|{lam}| != |{delta}|")
    return Fraction(class_size(delta) * character(lam, delta), dimension(lam))


def chi_sqrt(delta) -> int:
    """chi(Delta) = sum over all lambda of weight |Delta| of chi_lambda(Delta).

    Counts square roots: chi(Delta) * |C_Delta| is the number of g in S_d
    with g^2 in the class Delta.
    """
    delta = partition(delta)
    d = weight(delta)
    return sum(character(lam, delta) for lam in enumerate_partitions(d))


@dataclass(frozen=True)
class CharacterTable:
    """Full character table of S_d, for snapshots and bulk use."""

    weight: int
    values: Dict[Tuple[Partition, Partition], int]

    @staticmethod
    def for_weight(d: int) -> "CharacterTable":
        parts = enumerate_partitions(d)
        values = {(lam, delta): character(lam, delta)
                  for lam in parts for delta in parts}
        return CharacterTable(d, values)

    def chi(self, lam, delta) -> int:
        return self.values[(partition(lam), partition(delta))]

    def to_json(self) -> str:
        def key(lam: Partition, delta: Partition) -> str:
            return ",".join(map(str, lam)) + "|" + ",".join(map(str, delta))

        items = {key(lam, delta): v for (lam, delta), v in self.values.items()}
        return json.dumps({"weight": self.weight, "values": items},
                          sort_keys=True)


# ---------------------------------------------------------------------------
# Power-sum points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerSumPoint:
    """Finite exact power-sum data (p_1, ..., p_d); index m carries p_m."""

    values: Tuple[GaussianRational, ...]

    @staticmethod
    def of(values: Sequence, weight: Optional[int] = None) -> "PowerSumPoint":
        vals = tuple(GaussianRational.of(v) for v in values)
        if weight is not None:
            if len(vals) > weight:
                vals = vals[:weight]
            elif len(vals) < weight:
                vals = vals + (GR_ZERO,) * (weight - len(vals))
        return PowerSumPoint(vals)

    @staticmethod
    def infinity(weight: int) -> "PowerSumPoint":
        """p_infinity = (1, 0, 0, ...) truncated at the working weight."""
        return PowerSumPoint.of([1], weight=weight)

    @staticmethod
    def geometric(a, weight: int) -> "PowerSumPoint":
        """p(a) = (a, a, a, ...)."""
        return PowerSumPoint.of([a] * weight)

    @staticmethod
    def qt(q, t, weight: int) -> "PowerSumPoint":
        """p_m = (1 - q^m) / (1 - t^m)."""
        qg = GaussianRational.of(q)
        tg = GaussianRational.of(t)
        vals = []
        for m in range(1, weight + 1):
            tm = tg ** m
            if tm == 1:
                raise SingularSpecialization(
                    f"t^{m} = 1 makes p_{m}(q,t) singular")
            vals.append((1 - qg ** m) / (1 - tm))
        return PowerSumPoint(tuple(vals))

    @staticmethod
    def of_matrix(mat: Matrix, weight: int) -> "PowerSumPoint":
        """p_m = tr(X^m) for m = 1..weight."""
        return PowerSumPoint(tuple(mat_power_sums(mat, weight)))

    @property
    def weight(self) -> int:
        return len(self.values)

    def p(self, m: int) -> GaussianRational:
        """p_m, with p_m = 0 beyond the truncation (homogeneity makes
        higher power sums irrelevant for weights within the truncation)."""
        if m < 1:
            raise ValueError("power-sum index must be >= 1")
        if m > len(self.values):
            return GR_ZERO
        return self.values[m - 1]

    def scaled(self, c) -> "PowerSumPoint":
        """The point (c p_1, c p_2, ...), e.g. the N of s_lambda(N p)."""
        cg = GaussianRational.of(c)
        return PowerSumPoint(tuple(cg * v for v in self.values))

    def negated(self) -> "PowerSumPoint":
        return PowerSumPoint(tuple(-v for v in self.values))


# ---------------------------------------------------------------------------
# Schur evaluation
# ---------------------------------------------------------------------------

def complete_homogeneous(point: PowerSumPoint, kmax: int) -> list:
    """One-row Schur values s_(0..kmax) via k h_k = sum_m p_m h_{k-m}."""
    hs = [GR_ONE]
    for k in range(1, kmax + 1):
        acc = GR_ZERO
        for m in range(1, k + 1):
            pm = point.p(m)
            if pm:
                acc = acc + pm * hs[k - m]
        hs.append(acc / k)
    return hs


def schur_at(lam, point: PowerSumPoint) -> GaussianRational:
    """s_lambda at a power-sum point, by the Jacobi-Trudi determinant.

    Entries with index above |lambda| are dropped: in every monomial of the
    determinant the row indices sum to |lambda|, so such an entry is always
    multiplied by a negative-index (zero) one.
    """
    lam = partition(lam)
    d = weight(lam)
    if d > point.weight:
        raise TruncationTooSmall(
            f"|lambda| = {d} exceeds truncation weight {point.weight}")
    ell = len(lam)
    if ell == 0:
        return GR_ONE
    hs = complete_homogeneous(point, d)
    rows = []
    for i in range(1, ell + 1):
        row = []
        for j in range(1, ell + 1):
            idx = lam[i - 1] - i + j
            row.append(hs[idx] if 0 <= idx <= d else GR_ZERO)
        rows.append(tuple(row))
    return det_exact(rows)


def schur_at_via_characters(lam, point: PowerSumPoint) -> GaussianRational:
    """s_lambda(p) = sum_Delta chi_lambda(Delta) p_Delta / z_Delta."""
    lam = partition(lam)
    d = weight(lam)
    if d > point.weight:
        raise TruncationTooSmall(
            f"|lambda| = {d} exceeds truncation weight {point.weight}")
    total = GR_ZERO
    for delta in enumerate_partitions(d):
        chi = character(lam, delta)
        if not chi:
            continue
        p_delta = GR_ONE
        for part in delta:
            p_delta = p_delta * point.p(part)
        total = total + p_delta * Fraction(chi, z_of(delta))
    return total


def schur_of_matrix(lam, mat: Matrix) -> GaussianRational:
    """s_lambda of a matrix argument, via its trace power sums.

    Evaluating through power sums of an actual NxN matrix reproduces the
    eigenvalue definition, including the automatic vanishing for
    ell(lambda) > N, without dividing by Vandermonde factors.
    """
    lam = partition(lam)
    return schur_at(lam, PowerSumPoint.of_matrix(mat, weight(lam)))


def schur_special(lam, kind: str, *, N: Optional[int] = None, a=None,
                  q=None, t=None, base: Optional[PowerSumPoint] = None
                  ) -> GaussianRational:
    """Named specializations of s_lambda.

    kind:
      "p_infinity"       s_lambda(1, 0, 0, ...) = dim(lambda)/d!
      "identity_N"       s_lambda(I_N) = (N)_lambda s_lambda(p_inf); 0 if ell > N
      "geometric_a"      s_lambda at p_m = a for all m
      "qt"               s_lambda at p_m = (1 - q^m)/(1 - t^m)
      "scaled"           s_lambda at (N p_1, N p_2, ...) for the point ``base``
    """
    lam = partition(lam)
    d = weight(lam)
    if kind == "p_infinity":
        return schur_at(lam, PowerSumPoint.infinity(d))
    if kind == "identity_N":
        if N is None or N < 1:
            raise ValueError("identity_N needs a positive integer N")
        if len(lam) > N:
            return GR_ZERO
        pochhammer = content_product(N, lam)
        return GaussianRational.of(pochhammer) * schur_at(
            lam, PowerSumPoint.infinity(d))
    if kind == "geometric_a":
        if a is None:
            raise ValueError("geometric_a needs the value a")
        return schur_at(lam, PowerSumPoint.geometric(a, d))
    if kind == "qt":
        if q is None or t is None:
            raise ValueError("qt needs both q and t")
        return schur_at(lam, PowerSumPoint.qt(q, t, d))
    if kind == "scaled":
        if N is None or base is None:
            raise ValueError("scaled needs N and a base point")
        return schur_at(lam, base.scaled(N))
    raise ValueError(f"unknown specialization kind {kind!r}")
