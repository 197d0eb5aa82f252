"""Schur-series right-hand sides, exactly truncated at a fixed weight.

Every series here is the weight-d graded piece of a formally divergent
sum over partitions; because only finitely many exact terms are taken,
convergence never enters.  The building blocks per partition lambda are

    content weight   r_lambda                      (degree 0)
    edge propagator  s_lambda(N p_inf)^(-1)        (degree -1 each, n times)
    face weight      s_lambda(N p^(a)) or 1        (degree +1 per non-Mobius face)
    vertex weight    s_lambda(C~_a)                (degree +1 each)

so the total degree is F - n + V - e with e the number of Mobius faces,
which is the Euler characteristic of the base surface minus e.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from math import factorial
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from .characters import PowerSumPoint, dimension, schur_at
from .errors import DimensionMismatch, WeightMismatch
from .exact import (GR_ONE, GR_ZERO, GaussianRational, Matrix, identity,
                    mat_mul, mat_power_sums, mat_trace)
from .hurwitz import mednykh
from .network import Label, RibbonGraphSummary, Word
from .partitions import (ContentProductSpec, Partition, TRIVIAL_CONTENT,
                         content_product, enumerate_partitions, partition,
                         rational_content_weight, weight, z_of)

__all__ = [
    "PowerSumFace", "MobiusFace", "MOBIUS", "FaceWeight", "SchurSeriesSpec",
    "IDENTITY", "word_matrix", "theorem1_rhs", "theorem2_rhs",
    "expect_traces_formula", "series_degree", "tau_hyp_truncated",
    "tau_B_truncated", "miwa_specialize", "beta_weights", "normalize_sources",
]

IDENTITY = "identity"


@dataclass(frozen=True)
class PowerSumFace:
    """A face carrying s_lambda(N p^(a)) with its own power-sum data."""

    point: PowerSumPoint


@dataclass(frozen=True)
class MobiusFace:
    """A face glued by a Mobius sheet: Schur weight 1, degree count -1."""


MOBIUS = MobiusFace()
FaceWeight = Union[PowerSumFace, MobiusFace]

SourceMap = Mapping  # Label or "C3*"-style symbol -> Matrix or IDENTITY


def normalize_sources(sources: Optional[SourceMap], N: int) -> Dict[Label, Matrix]:
    """Resolve a source map to Label -> exact NxN matrix.

    Keys may be Label tuples or symbol strings ("C2", "C2*"); values may be
    matrices or the string "identity".  Missing labels default to I_N.
    """
    eye = identity(N)
    resolved: Dict[Label, Matrix] = {}
    for key, value in (sources or {}).items():
        if isinstance(key, Label):
            label = key
        elif isinstance(key, str) and key.startswith("C"):
            body = key[1:]
            conj = body.endswith("*")
            label = Label(int(body.rstrip("*")), conj)
        else:
            raise KeyError(f"bad source key {key!r}")
        if isinstance(value, str):
            if value != IDENTITY:
                raise ValueError(f"bad source value {value!r}")
            mat = eye
        else:
            mat = value
            if len(mat) != N or any(len(row) != N for row in mat):
                raise DimensionMismatch(
                    f"source {label.symbol()} is not {N}x{N}")
        resolved[label] = mat
    return resolved


def word_matrix(word: Sequence, sources: Optional[SourceMap], N: int) -> Matrix:
    """Product of the word's source matrices, in word order."""
    resolved = normalize_sources(sources, N)
    eye = identity(N)
    out = eye
    for letter in word:
        if isinstance(letter, str):
            conj = letter.endswith("*")
            letter = Label(int(letter[1:].rstrip("*")), conj)
        out = mat_mul(out, resolved.get(letter, eye))
    return out


@dataclass(frozen=True)
class SchurSeriesSpec:
    """All data the weight-d series evaluators need."""

    weight: int
    N: int
    summary: RibbonGraphSummary
    face_weights: Tuple[FaceWeight, ...]
    sources: Optional[SourceMap] = None
    content: ContentProductSpec = TRIVIAL_CONTENT
    propagator: str = "ginibre"  # or "unitary": s_lambda(I_N) per edge

    def __post_init__(self):
        if len(self.face_weights) != self.summary.F:
            raise ValueError(
                f"need {self.summary.F} face weights, got {len(self.face_weights)}")
        if self.propagator not in ("ginibre", "unitary"):
            raise ValueError(f"unknown propagator {self.propagator!r}")

    @property
    def mobius_count(self) -> int:
        return sum(1 for f in self.face_weights if isinstance(f, MobiusFace))


def series_degree(spec: SchurSeriesSpec) -> int:
    """Degree counter: +1 per Schur factor, -1 per propagator power."""
    power_sum_faces = spec.summary.F - spec.mobius_count
    return -spec.summary.n + power_sum_faces + spec.summary.V


def _word_power_sums(spec: SchurSeriesSpec) -> list:
    resolved = normalize_sources(spec.sources, spec.N)
    eye = identity(spec.N)
    points = []
    for word in spec.summary.words:
        mat = eye
        for letter in word:
            mat = mat_mul(mat, resolved.get(letter, eye))
        points.append(PowerSumPoint.of_matrix(mat, spec.weight))
    return points


def _propagator(spec: SchurSeriesSpec, lam: Partition) -> Fraction:
    d = weight(lam)
    if spec.propagator == "ginibre":
        # s_lambda(N p_inf) = N^d dim(lambda)/d!
        return Fraction(spec.N ** d * dimension(lam), factorial(d))
    # s_lambda(I_N) = (N)_lambda dim(lambda)/d!; nonzero whenever ell <= N
    return content_product(spec.N, lam) * Fraction(dimension(lam), factorial(d))


def _term(spec: SchurSeriesSpec, lam: Partition,
          vertex_points: Sequence[PowerSumPoint]) -> GaussianRational:
    term = GaussianRational.of(rational_content_weight(spec.content, lam))
    if not term:
        return GR_ZERO
    prop = _propagator(spec, lam)
    term = term * GaussianRational.of(prop ** (-spec.summary.n))
    for face in spec.face_weights:
        if isinstance(face, MobiusFace):
            continue
        term = term * schur_at(lam, face.point.scaled(spec.N))
        if not term:
            return GR_ZERO
    for point in vertex_points:
        term = term * schur_at(lam, point)
        if not term:
            return GR_ZERO
    return term


def theorem1_rhs(spec: SchurSeriesSpec) -> GaussianRational:
    """Weight-d piece of the network Schur series:

        sum over |lambda| = d, ell(lambda) <= N of
        r_lambda . propagator^(-n) . prod_faces s_lambda(N p^(a))
                 . prod_vertices s_lambda(C~_a),

    Mobius faces contributing 1.
    """
    vertex_points = _word_power_sums(spec)
    total = GR_ZERO
    for lam in enumerate_partitions(spec.weight):
        if len(lam) > spec.N:
            continue
        total = total + _term(spec, lam, vertex_points)
    return total


def beta_weights(spec: SchurSeriesSpec) -> Dict[Tuple[int, ...], GaussianRational]:
    """The lambda-sum of theorem1_rhs re-indexed by shifted parts
    h_i = lambda_i - i + N (h_1 > ... > h_N >= 0).

    Weights are the raw per-configuration terms, i.e. defined up to the
    ensemble's overall constant; the Vandermonde exponent of the
    corresponding discrete ensemble is series_degree(spec).
    """
    vertex_points = _word_power_sums(spec)
    out: Dict[Tuple[int, ...], GaussianRational] = {}
    for lam in enumerate_partitions(spec.weight):
        if len(lam) > spec.N:
            continue
        padded = lam + (0,) * (spec.N - len(lam))
        h = tuple(padded[i] - (i + 1) + spec.N for i in range(spec.N))
        out[h] = _term(spec, lam, vertex_points)
    return out


def theorem2_rhs(summary: RibbonGraphSummary, sources: Optional[SourceMap],
                 N: int, mu_list: Sequence) -> GaussianRational:
    """E(p_{mu^1}(X_1) ... p_{mu^F}(X_F)) from Hurwitz numbers:

        prod_a z_{mu^a} . N^(-nd) . sum over V-tuples Delta of
        H_{F-n+V}(mu's, Delta's) . prod_i p_{Delta^i}(C~_i).
    """
    mus = tuple(partition(m) for m in mu_list)
    if len(mus) != summary.F:
        raise ValueError(f"need {summary.F} trace partitions, got {len(mus)}")
    d = weight(mus[0])
    if any(weight(m) != d for m in mus):
        raise WeightMismatch(f"trace partitions must share a weight: {mus}")
    resolved = normalize_sources(sources, N)
    eye = identity(N)
    vertex_psums = []
    for word in summary.words:
        mat = eye
        for letter in word:
            mat = mat_mul(mat, resolved.get(letter, eye))
        vertex_psums.append([GaussianRational.of(1)] + mat_power_sums(mat, d))

    euler = summary.euler
    parts = enumerate_partitions(d)
    total = GR_ZERO
    for deltas in iproduct(parts, repeat=summary.V):
        h = mednykh(euler, mus + deltas)
        if not h:
            continue
        weight_term = GaussianRational.of(h)
        for i, delta in enumerate(deltas):
            for part in delta:
                weight_term = weight_term * vertex_psums[i][part]
        total = total + weight_term
    z = 1
    for mu in mus:
        z *= z_of(mu)
    return total * Fraction(z, N ** (summary.n * d))


def expect_traces_formula(summary: RibbonGraphSummary,
                          sources: Optional[SourceMap],
                          N: int) -> GaussianRational:
    """Closed form E(tr X_1 ... tr X_F) = N^(-n) prod_i tr(C~_i)."""
    resolved = normalize_sources(sources, N)
    eye = identity(N)
    out = GaussianRational.of(Fraction(1, N ** summary.n))
    for word in summary.words:
        mat = eye
        for letter in word:
            mat = mat_mul(mat, resolved.get(letter, eye))
        out = out * mat_trace(mat)
    return out


# ---------------------------------------------------------------------------
# Tau-function truncations and Miwa data
# ---------------------------------------------------------------------------

def tau_hyp_truncated(content: ContentProductSpec, p: PowerSumPoint,
                      p_star: PowerSumPoint, d_max: int) -> list:
    """Graded weights 0..d_max of sum_lambda r_lambda s_lambda(p) s_lambda(p*)."""
    out = []
    for d in range(d_max + 1):
        acc = GR_ZERO
        for lam in enumerate_partitions(d):
            r = rational_content_weight(content, lam)
            if not r:
                continue
            acc = acc + GaussianRational.of(r) * schur_at(lam, p) * schur_at(
                lam, p_star)
        out.append(acc)
    return out


def tau_B_truncated(M: Optional[int], content: ContentProductSpec,
                    p: PowerSumPoint, d_max: int) -> list:
    """Graded weights 0..d_max of sum over ell(lambda) <= M of r_lambda s_lambda(p).

    M = None means no length cap.
    """
    out = []
    for d in range(d_max + 1):
        acc = GR_ZERO
        for lam in enumerate_partitions(d):
            if M is not None and len(lam) > M:
                continue
            r = rational_content_weight(content, lam)
            if not r:
                continue
            acc = acc + GaussianRational.of(r) * schur_at(lam, p)
        out.append(acc)
    return out


def miwa_specialize(d_params: Sequence[Tuple], weight: int) -> PowerSumPoint:
    """The point p_m = -sum_i d_i x_i^m realizing prod_i det(1 - x_i X)^{N d_i}
    (the N is applied downstream, by evaluating s_lambda at N p)."""
    pairs = [(Fraction(di), GaussianRational.of(xi)) for di, xi in d_params]
    values = []
    for m in range(1, weight + 1):
        acc = GR_ZERO
        for di, xi in pairs:
            acc = acc + (xi ** m) * di
        values.append(-acc)
    return PowerSumPoint(tuple(values))
