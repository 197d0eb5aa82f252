"""Hurwitz numbers: character formula, S_d brute-force oracles, aggregates.

The character (Mednykh) formula

    H_{E*}(Delta^1, ..., Delta^k) = sum_lambda (dim lambda / d!)^{E*}
                                    phi_lambda(Delta^1) ... phi_lambda(Delta^k)

holds for any integer Euler characteristic E* of the base surface, positive
or not; the exponent is taken as an exact rational power.  The brute-force
oracles count solutions of the defining equations in S_d directly:

    orientable:  A_1...A_k prod_j a_j b_j a_j^-1 b_j^-1 = 1   (E* = 2 - 2g*)
    Klein:       A_1...A_k prod_j R_j^2 = 1                   (E* = 2 - g/)

Both fix A_1 to one class representative and multiply by |C_{Delta^1}|,
and both determine the last A from the group equation, so the enumeration
cost is prod of the middle class sizes times (d!)^(handles).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial
from typing import Sequence, Tuple

from .characters import chi_sqrt, dimension, phi
from .errors import InfeasibleConstraintWarning, SizeGuardExceeded, WeightMismatch
from .partitions import (Partition, class_size, enumerate_partitions,
                         partition, weight, z_of)

__all__ = [
    "HurwitzQuery", "mednykh", "brute_force_orientable", "brute_force_klein",
    "aggregate", "degree_lowering_check", "BRUTE_FORCE_STATE_BUDGET",
]

BRUTE_FORCE_STATE_BUDGET = 10 ** 8


def _common_weight(profiles: Sequence[Partition]) -> int:
    if not profiles:
        raise ValueError("at least one ramification profile is required")
    d = weight(profiles[0])
    if any(weight(p) != d for p in profiles):
        raise WeightMismatch(f"profiles must share a weight: {profiles}")
    if d < 1:
        raise ValueError("profiles must have weight >= 1")
    return d


@dataclass(frozen=True)
class HurwitzQuery:
    """Base Euler characteristic (<= 2) plus equal-weight profiles."""

    euler_base: int
    profiles: Tuple[Partition, ...]

    def __post_init__(self):
        if self.euler_base > 2:
            raise ValueError("no surface has Euler characteristic > 2")
        object.__setattr__(self, "profiles",
                           tuple(partition(p) for p in self.profiles))
        _common_weight(self.profiles)

    @property
    def weight(self) -> int:
        return weight(self.profiles[0])

    def value(self) -> Fraction:
        return mednykh(self.euler_base, self.profiles)


@lru_cache(maxsize=None)
def _mednykh_cached(euler_base: int, profiles: Tuple[Partition, ...]) -> Fraction:
    d = _common_weight(profiles)
    dfact = factorial(d)
    total = Fraction(0)
    for lam in enumerate_partitions(d):
        term = Fraction(dimension(lam), dfact) ** euler_base
        for pr in profiles:
            term *= phi(lam, pr)
            if not term:
                break
        total += term
    return total


def mednykh(euler_base: int, profiles: Sequence) -> Fraction:
    """H_{E*}(Delta^1, ..., Delta^k) by the character formula, exact."""
    return _mednykh_cached(euler_base, tuple(partition(p) for p in profiles))


# ---------------------------------------------------------------------------
# S_d oracles
# ---------------------------------------------------------------------------

Perm = Tuple[int, ...]


@lru_cache(maxsize=None)
def _symmetric_group(d: int) -> Tuple[Perm, ...]:
    return tuple(permutations(range(d)))


def _compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def _inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def _cycle_type(p: Perm) -> Partition:
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        ln = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            ln += 1
        lengths.append(ln)
    return tuple(sorted(lengths, reverse=True))


@lru_cache(maxsize=None)
def _conjugacy_class(delta: Partition) -> Tuple[Perm, ...]:
    d = weight(delta)
    return tuple(p for p in _symmetric_group(d) if _cycle_type(p) == delta)


def _guard(cost: int) -> None:
    if cost > BRUTE_FORCE_STATE_BUDGET:
        raise SizeGuardExceeded("brute-force enumeration refused", cost)


def _count_solutions(profiles: Tuple[Partition, ...], handles: int,
                     involutive: bool) -> Fraction:
    """Count tuples solving A_1..A_k P = 1 with P the handle product,
    A_1 fixed to a representative; returns the Hurwitz number."""
    d = _common_weight(profiles)
    dfact = factorial(d)
    k = len(profiles)
    middle = profiles[1:-1] if k >= 2 else ()
    cost = dfact ** handles if not involutive else dfact ** handles
    for pr in middle:
        cost *= class_size(pr)
    _guard(cost)

    group = _symmetric_group(d)
    identity = tuple(range(d))
    rep = _conjugacy_class(profiles[0])[0]
    last = profiles[-1]

    count = 0
    middle_classes = [_conjugacy_class(pr) for pr in middle]
    for mids in product(*middle_classes):
        q = rep
        for a in mids:
            q = _compose(q, a)
        q_inv = _inverse(q)
        for hs in product(group, repeat=handles):
            if involutive:
                p = identity
                for r in hs:
                    p = _compose(p, _compose(r, r))
            else:
                p = identity
                for j in range(0, handles, 2):
                    a, b = hs[j], hs[j + 1]
                    comm = _compose(_compose(a, b),
                                    _compose(_inverse(a), _inverse(b)))
                    p = _compose(p, comm)
            if k == 1:
                # rep * P = 1  <=>  P = rep^-1
                if p == _inverse(rep):
                    count += 1
            else:
                # A_k = (A_1 mids)^-1 P^-1 must lie in the last class
                a_k = _compose(q_inv, _inverse(p))
                if _cycle_type(a_k) == last:
                    count += 1
    return Fraction(class_size(profiles[0]) * count, dfact)


def brute_force_orientable(g_star: int, profiles: Sequence) -> Fraction:
    """#solutions of A_1..A_k prod [a_j, b_j] = 1 over d!, A_i in C_{Delta^i}."""
    if g_star < 0:
        raise ValueError("genus must be nonnegative")
    profs = tuple(partition(p) for p in profiles)
    return _count_solutions(profs, handles=2 * g_star, involutive=False)


def brute_force_klein(g_slash: int, profiles: Sequence) -> Fraction:
    """#solutions of A_1..A_k R_1^2 .. R_g^2 = 1 over d!; E* = 2 - g/."""
    if g_slash < 1:
        raise ValueError("non-orientable genus must be >= 1")
    profs = tuple(partition(p) for p in profiles)
    return _count_solutions(profs, handles=g_slash, involutive=True)


# ---------------------------------------------------------------------------
# Aggregates and the degree-lowering relation
# ---------------------------------------------------------------------------

def aggregate(euler_base: int, fixed_profiles: Sequence, total_points: int,
              euler_cover: int) -> Fraction:
    """Sum of H_{E*}(fixed..., Delta^1..Delta^k) over all weight-d tuples
    satisfying the Riemann-Hurwitz constraint

        d (E* - total_points) + sum ell(fixed) + sum ell(Delta) = E_cover.

    Trivial profiles (1^d) are admitted in the sum.  Returns 0 (with an
    InfeasibleConstraintWarning) when no tuple qualifies.
    """
    fixed = tuple(partition(p) for p in fixed_profiles)
    d = _common_weight(fixed)
    m = len(fixed)
    if total_points < m:
        raise ValueError("total_points must cover the fixed profiles")
    k = total_points - m
    needed = euler_cover - d * (euler_base - total_points) - sum(
        len(p) for p in fixed)
    total = Fraction(0)
    feasible = False
    parts = enumerate_partitions(d)
    for deltas in product(parts, repeat=k):
        if sum(len(dl) for dl in deltas) != needed:
            continue
        feasible = True
        total += mednykh(euler_base, fixed + deltas)
    if not feasible:
        warnings.warn(
            f"no profile tuple satisfies the Riemann-Hurwitz constraint "
            f"(needed total length {needed})", InfeasibleConstraintWarning)
        return Fraction(0)
    return total


def degree_lowering_check(euler_base: int,
                          profiles: Sequence) -> Tuple[Fraction, Fraction]:
    """lhs = H_{E-1}(profiles); rhs = sum_Delta H_E(profiles, Delta) chi(Delta)."""
    profs = tuple(partition(p) for p in profiles)
    d = _common_weight(profs)
    lhs = mednykh(euler_base - 1, profs)
    rhs = Fraction(0)
    for delta in enumerate_partitions(d):
        chi = chi_sqrt(delta)
        if chi:
            rhs += mednykh(euler_base, profs + (delta,)) * chi
    return lhs, rhs
