"""Ginibre/Haar verification of the matrix-model left-hand sides.

The exact lane computes Gaussian expectations by Wick's theorem on cyclic
words.  The Ginibre entry covariance here is E[Z_ab conj(Z_cd)] =
delta_ac delta_bd / N, read off the weight exp(-N |Z_ij|^2) -- this 1/N is
the one normalization everything else depends on.  Contracting a conjugate
pair performs exactly the network's cutting-and-joining on words:

    tr(Z a Z^+ b)      -> (1/N) tr(a) tr(b)     (chord: one trace splits)
    tr(Z a) tr(Z^+ b)  -> (1/N) tr(a b)          (link: two traces merge)

and after all pairs are contracted only constant traces remain, evaluated
in exact Gaussian-rational arithmetic.

Floating point lives only in the Monte Carlo samplers; comparisons against
exact values always go through the reported standard errors.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, sqrt
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .characters import character, schur_of_matrix
from .errors import SizeGuardExceeded
from .exact import (GR_ONE, GR_ZERO, GaussianRational, Matrix, identity,
                    mat_mul, mat_to_complex, mat_trace)
from .network import ChordNetwork, Dart, Label
from .partitions import Partition, enumerate_partitions, partition, weight, z_of
from .series import IDENTITY, normalize_sources

__all__ = [
    "TraceObservable", "MCReport", "LemmaCheckResult", "wick_expectation",
    "wick_words", "mc_ginibre", "mc_unitary", "lemma_check", "within_sigma",
    "WICK_MATCHING_BUDGET",
]

WICK_MATCHING_BUDGET = 10 ** 7

# A letter is ("Z", i), ("Zd", i) or ("M", exact matrix); words are cyclic.
Letter = Tuple[str, object]
WickWord = Tuple[Letter, ...]


@dataclass(frozen=True)
class TraceObservable:
    """p_{mu^1}(X_1) ... p_{mu^F}(X_F) for the networks' matrix products."""

    network: ChordNetwork
    mu_list: Tuple[Partition, ...]
    sources: Optional[dict]
    N: int

    def __post_init__(self):
        object.__setattr__(self, "mu_list",
                           tuple(partition(m) for m in self.mu_list))
        if len(self.mu_list) != self.network.loop_count:
            raise ValueError(
                f"need one trace partition per loop "
                f"({self.network.loop_count}), got {len(self.mu_list)}")

    def loop_letters(self) -> List[List[Letter]]:
        """Per loop, the letters of one traversal of X_a."""
        resolved = normalize_sources(self.sources, self.N)
        eye = identity(self.N)
        out = []
        for loop in self.network.loops:
            letters: List[Letter] = []
            for item in loop:
                if isinstance(item, Dart):
                    letters.append(("Zd" if item.conj else "Z", item.pair))
                else:
                    mat = resolved.get(item, eye)
                    if mat != eye:
                        letters.append(("M", mat))
            out.append(letters)
        return out

    def wick_words(self) -> List[WickWord]:
        words = []
        for letters, mu in zip(self.loop_letters(), self.mu_list):
            for part in mu:
                words.append(tuple(letters) * part)
        return words


# ---------------------------------------------------------------------------
# Exact Wick contraction
# ---------------------------------------------------------------------------

def _constant_factor(words: List[WickWord], N: int
                     ) -> Tuple[GaussianRational, List[WickWord]]:
    """Evaluate and strip the words that contain no random letters."""
    factor = GR_ONE
    active = []
    for word in words:
        if any(kind in ("Z", "Zd") for kind, _ in word):
            active.append(word)
            continue
        if not word:
            factor = factor * N
            continue
        mat = None
        for _, m in word:
            mat = m if mat is None else mat_mul(mat, m)
        factor = factor * mat_trace(mat)
    return factor, active


def wick_words(words: Sequence[WickWord], N: int) -> GaussianRational:
    """Gaussian expectation of a product of traces of cyclic words."""
    counts: Dict[int, int] = {}
    for word in words:
        for kind, payload in word:
            if kind == "Z":
                counts[payload] = counts.get(payload, 0) + 1
            elif kind == "Zd":
                counts[payload] = counts.get(payload, 0) - 1
    if any(c != 0 for c in counts.values()):
        return GR_ZERO
    occurrences: Dict[int, int] = {}
    for word in words:
        for kind, payload in word:
            if kind == "Z":
                occurrences[payload] = occurrences.get(payload, 0) + 1
    budget = 1
    for occ in occurrences.values():
        budget *= factorial(occ)
    if budget > WICK_MATCHING_BUDGET:
        raise SizeGuardExceeded("Wick matching enumeration refused", budget)
    return _wick(list(words), N)


def _wick(words: List[WickWord], N: int) -> GaussianRational:
    factor, active = _constant_factor(words, N)
    if not factor:
        return GR_ZERO
    if not active:
        return factor

    # first random letter, scanning deterministically
    wi = pi = -1
    ensemble = None
    for a, word in enumerate(active):
        for p, (kind, payload) in enumerate(word):
            if kind == "Z":
                wi, pi, ensemble = a, p, payload
                break
        if ensemble is not None:
            break
    if ensemble is None:
        # only Zd letters left: unmatched, zero (pre-check makes this dead)
        return GR_ZERO

    total = GR_ZERO
    for b, word in enumerate(active):
        for q, (kind, payload) in enumerate(word):
            if kind != "Zd" or payload != ensemble:
                continue
            if b == wi:
                first = _between(word, pi, q)
                second = _between(word, q, pi)
                rest = active[:wi] + [first, second] + active[wi + 1:]
            else:
                lo, hi = (wi, b) if wi < b else (b, wi)
                merged = _rotated(active[wi], pi) + _rotated(active[b], q)
                rest = active[:lo] + [merged] + active[lo + 1:hi] + active[hi + 1:]
            total = total + _wick(rest, N)
    return factor * total / N


def _between(word: WickWord, a: int, b: int) -> WickWord:
    if a < b:
        return word[a + 1:b]
    return word[a + 1:] + word[:b]


def _rotated(word: WickWord, pos: int) -> WickWord:
    return word[pos + 1:] + word[:pos]


def wick_expectation(obs: TraceObservable) -> GaussianRational:
    """Exact E(p_{mu^1}(X_1) ... p_{mu^F}(X_F)) over the Ginibre ensembles."""
    return wick_words(obs.wick_words(), obs.N)


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MCReport:
    estimate: complex
    standard_error: complex  # componentwise SE of the real and imaginary parts
    samples: int
    seed: int


_BLOCK = 8192


def _block_plan(samples: int) -> List[Tuple[int, int]]:
    return [(start, min(start + _BLOCK, samples))
            for start in range(0, samples, _BLOCK)]


def _report(values: np.ndarray, seed: int) -> MCReport:
    s = len(values)
    est = complex(values.mean())
    se = complex(values.real.std(ddof=1) / sqrt(s),
                 values.imag.std(ddof=1) / sqrt(s))
    return MCReport(estimate=est, standard_error=se, samples=s, seed=seed)


def _ginibre_block(rng: np.random.Generator, size: int, n_ensembles: int,
                   N: int, variance_scale: float) -> np.ndarray:
    scale = sqrt(variance_scale / (2.0 * N))
    z = rng.standard_normal((n_ensembles, size, N, N)) \
        + 1j * rng.standard_normal((n_ensembles, size, N, N))
    return z * scale


def _haar_block(rng: np.random.Generator, size: int, n_ensembles: int,
                N: int) -> np.ndarray:
    z = (rng.standard_normal((n_ensembles, size, N, N))
         + 1j * rng.standard_normal((n_ensembles, size, N, N))) / sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.einsum("...ii->...i", r)
    phases = diag / np.abs(diag)
    return q * phases[..., None, :]


def _observable_values(obs: TraceObservable, zs: np.ndarray) -> np.ndarray:
    """Evaluate the trace observable on a block of ensemble draws.

    zs has shape (n, B, N, N): draw b of ensemble i is zs[i - 1, b].
    """
    B = zs.shape[1]
    N = obs.N
    values = np.ones(B, dtype=complex)
    sources = {label: mat_to_complex(mat)
               for label, mat in normalize_sources(obs.sources, N).items()}
    eye = np.eye(N, dtype=complex)
    for loop, mu in zip(obs.network.loops, obs.mu_list):
        x = np.broadcast_to(eye, (B, N, N)).copy()
        for item in loop:
            if isinstance(item, Dart):
                z = zs[item.pair - 1]
                x = x @ (np.conj(np.swapaxes(z, -1, -2)) if item.conj else z)
            else:
                const = sources.get(item)
                if const is not None:
                    x = x @ const
        powers = {}
        acc = x
        for k in range(1, max(mu) + 1):
            if k > 1:
                acc = acc @ x
            powers[k] = np.trace(acc, axis1=-2, axis2=-1)
        for part in mu:
            values = values * powers[part]
    return values


def _run_blocks(samples: int, seed: int, threads: int, worker) -> np.ndarray:
    plan = _block_plan(samples)
    out = np.empty(samples, dtype=complex)

    def run(args):
        bidx, (start, stop) = args
        rng = np.random.default_rng(np.random.SeedSequence((seed, bidx)))
        out[start:stop] = worker(rng, stop - start)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, enumerate(plan)))
    else:
        for args in enumerate(plan):
            run(args)
    return out


def mc_ginibre(obs: TraceObservable, samples: int, seed: int, *,
               threads: int = 1, variance_scale: float = 1.0) -> MCReport:
    """Monte Carlo estimate of the trace observable over Ginibre draws."""
    if samples < 2:
        raise ValueError("need at least 2 samples")
    n = obs.network.n

    def worker(rng, size):
        zs = _ginibre_block(rng, size, n, obs.N, variance_scale)
        return _observable_values(obs, zs)

    return _report(_run_blocks(samples, seed, threads, worker), seed)


def mc_unitary(obs: TraceObservable, samples: int, seed: int, *,
               threads: int = 1) -> MCReport:
    """Monte Carlo with independent Haar unitaries replacing the Z_i."""
    if samples < 2:
        raise ValueError("need at least 2 samples")
    n = obs.network.n

    def worker(rng, size):
        us = _haar_block(rng, size, n, obs.N)
        return _observable_values(obs, us)

    return _report(_run_blocks(samples, seed, threads, worker), seed)


def within_sigma(report: MCReport, exact: GaussianRational, k: float = 4.0
                 ) -> bool:
    """Componentwise k-sigma acceptance, with a tiny floor for
    zero-variance observables."""
    floor = 1e-9 * (1.0 + abs(exact.to_complex()))
    dre = abs(report.estimate.real - float(exact.re))
    dim = abs(report.estimate.imag - float(exact.im))
    return (dre <= k * max(report.standard_error.real, floor)
            and dim <= k * max(report.standard_error.imag, floor))


# ---------------------------------------------------------------------------
# Lemma identities (loop split / join under one conjugate pair)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LemmaCheckResult:
    kind: str
    exact_rhs: GaussianRational
    exact_lhs: Optional[GaussianRational]
    mc: MCReport

    @property
    def passed(self) -> bool:
        ok = within_sigma(self.mc, self.exact_rhs)
        if self.exact_lhs is not None:
            ok = ok and self.exact_lhs == self.exact_rhs
        return ok


def _schur_values_numeric(lam: Partition, x: np.ndarray) -> np.ndarray:
    """s_lambda of a block of matrices, via power sums and Jacobi-Trudi."""
    ell = len(lam)
    if ell == 0:
        return np.ones(x.shape[0], dtype=complex)
    kmax = lam[0] - 1 + ell
    psums = []
    acc = x
    for k in range(1, kmax + 1):
        if k > 1:
            acc = acc @ x
        psums.append(np.trace(acc, axis1=-2, axis2=-1))
    B = x.shape[0]
    hs = [np.ones(B, dtype=complex)]
    for k in range(1, kmax + 1):
        total = np.zeros(B, dtype=complex)
        for m in range(1, k + 1):
            total += psums[m - 1] * hs[k - m]
        hs.append(total / k)
    mat = np.zeros((B, ell, ell), dtype=complex)
    for i in range(1, ell + 1):
        for j in range(1, ell + 1):
            idx = lam[i - 1] - i + j
            if idx >= 0:
                mat[:, i - 1, j - 1] = hs[idx]
    return np.linalg.det(mat)


def _schur_prop(lam: Partition, N: int, unitary: bool) -> GaussianRational:
    from .characters import schur_special
    if unitary:
        return schur_special(lam, "identity_N", N=N)
    d = weight(lam)
    from .characters import dimension
    return GaussianRational.of(Fraction(N ** d * dimension(lam), factorial(d)))


def _wick_schur_split(lam: Partition, A: Matrix, B: Matrix, N: int
                      ) -> GaussianRational:
    """Exact E s_lambda(A Z B Z^+) by character expansion plus Wick."""
    total = GR_ZERO
    for delta in enumerate_partitions(weight(lam)):
        chi = character(lam, delta)
        if not chi:
            continue
        words = [(("M", A), ("Z", 1), ("M", B), ("Zd", 1)) * part
                 for part in delta]
        total = total + wick_words(words, N) * Fraction(chi, z_of(delta))
    return total


def _wick_schur_join(mu: Partition, lam: Partition, A: Matrix, B: Matrix,
                     N: int) -> GaussianRational:
    """Exact E s_mu(A Z) s_lambda(Z^+ B)."""
    if weight(mu) != weight(lam):
        return GR_ZERO  # unmatched Z counts
    total = GR_ZERO
    for dmu in enumerate_partitions(weight(mu)):
        chi_mu = character(mu, dmu)
        if not chi_mu:
            continue
        words_mu = [(("M", A), ("Z", 1)) * part for part in dmu]
        for dlam in enumerate_partitions(weight(lam)):
            chi_lam = character(lam, dlam)
            if not chi_lam:
                continue
            words = words_mu + [(("Zd", 1), ("M", B)) * part for part in dlam]
            total = total + wick_words(words, N) * Fraction(
                chi_mu * chi_lam, z_of(dmu) * z_of(dlam))
    return total


def lemma_check(kind: str, lam, mu, A: Matrix, B: Matrix, N: int,
                samples: int, seed: int) -> LemmaCheckResult:
    """Check one split/join identity: Monte Carlo LHS vs exact RHS, plus an
    exact Wick LHS for the Ginibre kinds at small weight.

    kinds: split_ginibre, join_ginibre, split_unitary, join_unitary.
    """
    lam = partition(lam)
    mu = partition(mu) if mu is not None else lam
    if len(lam) > N or len(mu) > N:
        raise ValueError("partition lengths must not exceed N")
    unitary = kind.endswith("unitary")
    split = kind.startswith("split")
    if kind not in ("split_ginibre", "join_ginibre", "split_unitary",
                    "join_unitary"):
        raise ValueError(f"unknown lemma kind {kind!r}")

    prop = _schur_prop(lam, N, unitary)
    if split:
        rhs = schur_of_matrix(lam, A) * schur_of_matrix(lam, B) / prop
    else:
        rhs = (schur_of_matrix(lam, mat_mul(A, B)) / prop
               if mu == lam else GR_ZERO)

    exact_lhs = None
    if not unitary and weight(lam) + weight(mu) <= 8:
        exact_lhs = (_wick_schur_split(lam, A, B, N) if split
                     else _wick_schur_join(mu, lam, A, B, N))

    a_c = mat_to_complex(A)
    b_c = mat_to_complex(B)

    def worker(rng, size):
        if unitary:
            z = _haar_block(rng, size, 1, N)[0]
        else:
            z = _ginibre_block(rng, size, 1, N, 1.0)[0]
        zd = np.conj(np.swapaxes(z, -1, -2))
        if split:
            x = a_c @ z @ b_c @ zd
            return _schur_values_numeric(lam, x)
        return (_schur_values_numeric(mu, a_c @ z)
                * _schur_values_numeric(lam, zd @ b_c))

    values = _run_blocks(samples, seed, 1, worker)
    return LemmaCheckResult(kind=kind, exact_rhs=rhs, exact_lhs=exact_lhs,
                            mc=_report(values, seed))
