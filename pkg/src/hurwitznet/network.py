"""Network chord diagrams, cutting-and-joining, ribbon-graph summaries.

A network is a connected collection of F oriented loops over 2n darts.
Dart (i, False) is the Z_i C_i arc and (i, True) the conjugate arc; each
dart carries its trailing source label (C_i resp. C_i*).  Contracting a
chord (both darts on one loop) splits the loop, contracting a link (darts
on two loops) merges them; labels survive at their boundary positions.

The vertex words can be read off without contracting anything: with sigma
the clockwise successor inside each loop and alpha the conjugate flip, the
vertices are the cycles of x -> sigma(alpha(x)), and the letter emitted at
step x is the label trailing alpha(x).  Both routes are computed and must
agree; `ribbon_summary` checks that on every call.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple, Union

from .errors import (DisconnectedNetwork, DuplicateDart, MissingPartner,
                     NetworkSyntaxError, UnknownPair)

__all__ = [
    "Dart", "Label", "ChordNetwork", "RibbonGraphSummary",
    "parse_network", "contract", "contract_all", "ribbon_summary",
    "verify_order_independence", "random_network", "canonical_rotation",
]


class Dart(NamedTuple):
    pair: int
    conj: bool

    @property
    def partner(self) -> "Dart":
        return Dart(self.pair, not self.conj)

    @property
    def trailing_label(self) -> "Label":
        return Label(self.pair, self.conj)

    def token(self) -> str:
        return f"z{self.pair}'" if self.conj else f"z{self.pair}"


class Label(NamedTuple):
    pair: int
    conj: bool

    def symbol(self) -> str:
        return f"C{self.pair}*" if self.conj else f"C{self.pair}"


Item = Union[Dart, Label]
Word = Tuple[Label, ...]


def canonical_rotation(word: Sequence[Label]) -> Word:
    """Lexicographically least cyclic rotation (words compare up to rotation)."""
    w = tuple(word)
    if len(w) <= 1:
        return w
    return min(w[k:] + w[:k] for k in range(len(w)))


@dataclass(frozen=True)
class ChordNetwork:
    """Loops of darts and labels; labels trail their darts from construction."""

    loops: Tuple[Tuple[Item, ...], ...]

    @staticmethod
    def from_dart_loops(dart_loops: Sequence[Sequence[Dart]]) -> "ChordNetwork":
        """Build from bare dart loops, materializing trailing labels."""
        loops = []
        for loop in dart_loops:
            items: List[Item] = []
            for dart in loop:
                items.append(dart)
                items.append(dart.trailing_label)
            loops.append(tuple(items))
        network = ChordNetwork(tuple(loops))
        network.validate()
        return network

    # -- structure ------------------------------------------------------

    def darts(self) -> List[Dart]:
        return [it for loop in self.loops for it in loop if isinstance(it, Dart)]

    @property
    def pairs(self) -> Tuple[int, ...]:
        return tuple(sorted({d.pair for d in self.darts()}))

    @property
    def n(self) -> int:
        return len(self.pairs)

    @property
    def loop_count(self) -> int:
        return len(self.loops)

    def validate(self) -> None:
        darts = self.darts()
        seen = set()
        for d in darts:
            if d in seen:
                raise DuplicateDart(f"dart {d.token()} occurs twice")
            seen.add(d)
        for d in darts:
            if d.partner not in seen:
                raise MissingPartner(f"dart {d.token()} has no partner")
        pairs = {d.pair for d in darts}
        if pairs and pairs != set(range(1, len(pairs) + 1)):
            raise NetworkSyntaxError(
                f"pair indices must be 1..n, got {sorted(pairs)}", 0, 0)
        if any(not loop for loop in self.loops):
            raise NetworkSyntaxError("empty loop", 0, 0)
        self._check_connected()

    def _check_connected(self) -> None:
        if len(self.loops) <= 1:
            return
        loop_of: Dict[Dart, int] = {}
        for idx, loop in enumerate(self.loops):
            for it in loop:
                if isinstance(it, Dart):
                    loop_of[it] = idx
        adjacency: Dict[int, set] = {i: set() for i in range(len(self.loops))}
        for dart, idx in loop_of.items():
            jdx = loop_of[dart.partner]
            adjacency[idx].add(jdx)
            adjacency[jdx].add(idx)
        seen = {0}
        stack = [0]
        while stack:
            for nb in adjacency[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(self.loops):
            raise DisconnectedNetwork(
                f"network has {len(self.loops)} loops but only {len(seen)} "
                "reachable from the first")


@dataclass(frozen=True)
class RibbonGraphSummary:
    """(F, n, V, Euler characteristic, vertex words) of the ribbon graph."""

    F: int
    n: int
    V: int
    euler: int
    words: Tuple[Word, ...]

    def __post_init__(self):
        assert self.euler == self.F - self.n + self.V
        assert sum(len(w) for w in self.words) == 2 * self.n
        labels = [l for w in self.words for l in w]
        assert len(set(labels)) == len(labels) == 2 * self.n

    @property
    def genus_tilde(self) -> int:
        """Number of link contractions: V = F + n - 2 g~*."""
        return (self.F + self.n - self.V) // 2

    @property
    def genus(self) -> int:
        """g* with euler = 2 - 2 g*; equals F - 1 + g~*."""
        return self.F - 1 + self.genus_tilde

    def word_symbols(self) -> List[List[str]]:
        return [[l.symbol() for l in w] for w in self.words]

    def to_dict(self) -> dict:
        return {"F": self.F, "n": self.n, "V": self.V, "euler": self.euler,
                "words": self.word_symbols()}


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"z(\d+)(')?$")


def parse_network(text: str) -> ChordNetwork:
    """Parse the loop DSL: one `X<k>: z1 z2' ...` line per loop, # comments."""
    dart_loops: List[List[Dart]] = []
    expected = 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise NetworkSyntaxError("expected 'X<k>: ...'", lineno, 1)
        name = head.strip()
        if name != f"X{expected}":
            raise NetworkSyntaxError(
                f"loop name must be X{expected}, got {name!r}", lineno, 1)
        expected += 1
        loop: List[Dart] = []
        col = len(head) + 2
        for tok in body.split():
            col = line.index(tok, col - 1) + 1
            m = _TOKEN.match(tok)
            if not m:
                raise NetworkSyntaxError(f"bad token {tok!r}", lineno, col)
            loop.append(Dart(int(m.group(1)), m.group(2) == "'"))
        if not loop:
            raise NetworkSyntaxError("empty loop", lineno, 1)
        dart_loops.append(loop)
    if not dart_loops:
        raise NetworkSyntaxError("no loops", 1, 1)
    return ChordNetwork.from_dart_loops(dart_loops)


# ---------------------------------------------------------------------------
# Cutting and joining
# ---------------------------------------------------------------------------

def contract(network: ChordNetwork, pair_index: int) -> ChordNetwork:
    """Contract one chord or link; the pair's labels stay behind."""
    positions = {}
    for li, loop in enumerate(network.loops):
        for pos, it in enumerate(loop):
            if isinstance(it, Dart) and it.pair == pair_index:
                positions[it.conj] = (li, pos)
    if len(positions) != 2:
        raise UnknownPair(f"pair {pair_index} is not present")
    (l1, p1), (l2, p2) = positions[False], positions[True]
    loops = list(network.loops)
    if l1 == l2:
        # chord: split into the two arcs between the darts
        loop = loops[l1]
        arc_a = _arc(loop, p1, p2)
        arc_b = _arc(loop, p2, p1)
        loops[l1:l1 + 1] = [arc_a, arc_b]
    else:
        # link: merge, preserving both cyclic orders
        rest1 = _rotate_out(loops[l1], p1)
        rest2 = _rotate_out(loops[l2], p2)
        first, second = min(l1, l2), max(l1, l2)
        loops[first] = rest1 + rest2
        del loops[second]
    return ChordNetwork(tuple(loops))


def _arc(loop: Tuple[Item, ...], a: int, b: int) -> Tuple[Item, ...]:
    """Items strictly between positions a and b, cyclically."""
    if a < b:
        return loop[a + 1:b]
    return loop[a + 1:] + loop[:b]


def _rotate_out(loop: Tuple[Item, ...], pos: int) -> Tuple[Item, ...]:
    """The loop read from just after `pos`, with the item at `pos` removed."""
    return loop[pos + 1:] + loop[:pos]


def contract_all(network: ChordNetwork,
                 order: Sequence[int]) -> Tuple[ChordNetwork, int]:
    """Contract every pair in the given order; returns (result, #links)."""
    links = 0
    for pair in order:
        before = network.loop_count
        locations = {it.conj for loop in network.loops for it in loop
                     if isinstance(it, Dart) and it.pair == pair}
        same_loop = any(
            sum(1 for it in loop if isinstance(it, Dart) and it.pair == pair) == 2
            for loop in network.loops)
        network = contract(network, pair)
        if not same_loop:
            links += 1
            assert network.loop_count == before - 1
        else:
            assert network.loop_count == before + 1
        del locations
    return network, links


def _words_of_contracted(final: ChordNetwork) -> List[Word]:
    words = []
    for loop in final.loops:
        assert all(isinstance(it, Label) for it in loop)
        words.append(canonical_rotation(loop))  # type: ignore[arg-type]
    return words


# ---------------------------------------------------------------------------
# Permutation model
# ---------------------------------------------------------------------------

def _vertex_cycles(network: ChordNetwork) -> List[List[Dart]]:
    """Cycles of x -> sigma(alpha(x)) over the darts."""
    successor: Dict[Dart, Dart] = {}
    for loop in network.loops:
        darts = [it for it in loop if isinstance(it, Dart)]
        for k, d in enumerate(darts):
            successor[d] = darts[(k + 1) % len(darts)]
    step = {d: successor[d.partner] for d in successor}
    cycles = []
    seen = set()
    for start in sorted(step):
        if start in seen:
            continue
        cycle = []
        x = start
        while x not in seen:
            seen.add(x)
            cycle.append(x)
            x = step[x]
        cycles.append(cycle)
    return cycles


def _words_of_permutation(network: ChordNetwork) -> List[Word]:
    words = []
    for cycle in _vertex_cycles(network):
        word = tuple(x.partner.trailing_label for x in cycle)
        words.append(canonical_rotation(word))
    return words


# ---------------------------------------------------------------------------
# Summary
# ---------------------------------------------------------------------------

def ribbon_summary(network: ChordNetwork) -> RibbonGraphSummary:
    """Compute (F, n, V, E*, words) by contraction and by the permutation
    model; the two must agree."""
    F = network.loop_count
    n = network.n
    final, links = contract_all(network, network.pairs)
    words_a = sorted(_words_of_contracted(final))
    words_b = sorted(_words_of_permutation(network))
    if words_a != words_b:
        raise AssertionError(
            f"contraction and permutation words disagree: {words_a} vs {words_b}")
    V = len(words_a)
    assert V == F + n - 2 * links
    return RibbonGraphSummary(F=F, n=n, V=V, euler=F - n + V,
                              words=tuple(words_a))


def verify_order_independence(network: ChordNetwork, trials: int,
                              seed: int) -> bool:
    """Contract in `trials` random orders; True iff V and the word multiset
    (up to rotation) never change."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    pairs = list(network.pairs)
    rng = random.Random(seed)
    reference = None
    for _ in range(trials):
        order = rng.sample(pairs, len(pairs))
        final, _links = contract_all(network, order)
        outcome = tuple(sorted(_words_of_contracted(final)))
        if reference is None:
            reference = outcome
        elif outcome != reference:
            return False
    return True


def random_network(n: int, F: int, seed: int) -> ChordNetwork:
    """A uniform-ish random connected network with n pairs and F loops."""
    if not 1 <= F <= 2 * n:
        raise ValueError("need 1 <= F <= 2n")
    rng = random.Random(seed)
    darts = [Dart(i, c) for i in range(1, n + 1) for c in (False, True)]
    while True:
        rng.shuffle(darts)
        cuts = sorted(rng.sample(range(1, 2 * n), F - 1)) if F > 1 else []
        bounds = [0] + cuts + [2 * n]
        loops = [darts[bounds[k]:bounds[k + 1]] for k in range(F)]
        try:
            return ChordNetwork.from_dart_loops(loops)
        except DisconnectedNetwork:
            continue
