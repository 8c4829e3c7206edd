"""Labeled graphs presenting shift spaces, and the flower automaton of X(W).

State sets are Python ints used as bitmasks.  Every graph built here is
essential (each state has an incoming and an outgoing edge), so a word
is in the language iff some path carries it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .generators import GeneratorFamily, GeneratorSet
from .words import Word, is_primitive, min_rotation


class NotInLanguage(ValueError):
    pass


def bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class LabeledGraph:
    def __init__(self, size: int, n_states: int, edges: Sequence[tuple[int, int, int]],
                 level: int | None = None, name: str = ""):
        self.size = size
        self.n_states = n_states
        self.edges = tuple(edges)
        self.level = level
        self.name = name
        self.all_states = (1 << n_states) - 1
        self._fwd = [[0] * n_states for _ in range(size)]
        self._bwd = [[0] * n_states for _ in range(size)]
        self._succ = [0] * n_states
        for src, a, dst in self.edges:
            if not 0 <= a < size:
                raise ValueError(f"edge symbol {a} outside alphabet of size {size}")
            self._fwd[a][src] |= 1 << dst
            self._bwd[a][dst] |= 1 << src
            self._succ[src] |= 1 << dst
        self._cache_f = [dict() for _ in range(size)]
        self._cache_b = [dict() for _ in range(size)]
        self._cache_any: dict[int, int] = {}

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} states={self.n_states} edges={len(self.edges)}>"

    @property
    def exact(self) -> bool:
        """False when the graph is a truncation of a countable generator."""
        return self.level is None

    def step(self, mask: int, a: int) -> int:
        cache = self._cache_f[a]
        out = cache.get(mask)
        if out is None:
            out = 0
            row = self._fwd[a]
            for q in bits(mask):
                out |= row[q]
            cache[mask] = out
        return out

    def step_back(self, mask: int, a: int) -> int:
        cache = self._cache_b[a]
        out = cache.get(mask)
        if out is None:
            out = 0
            row = self._bwd[a]
            for q in bits(mask):
                out |= row[q]
            cache[mask] = out
        return out

    def step_any(self, mask: int) -> int:
        """States reachable in exactly one step, ignoring labels."""
        out = self._cache_any.get(mask)
        if out is None:
            out = 0
            for q in bits(mask):
                out |= self._succ[q]
            self._cache_any[mask] = out
        return out

    def run(self, mask: int, word: Sequence[int]) -> int:
        for a in word:
            if not mask:
                return 0
            mask = self.step(mask, a)
        return mask

    def ends(self, word: Sequence[int]) -> int:
        """States where some path labeled `word` ends."""
        return self.run(self.all_states, word)

    def starts(self, word: Sequence[int]) -> int:
        """States where some path labeled `word` starts."""
        mask = self.all_states
        for a in reversed(tuple(word)):
            if not mask:
                return 0
            mask = self.step_back(mask, a)
        return mask

    def contains(self, word: Sequence[int]) -> bool:
        return bool(self.ends(word))

    def require(self, word: Sequence[int], what: str = "word"):
        if not self.contains(word):
            raise NotInLanguage(f"{what} {tuple(word)} is not in the language")

    def words_from(self, mask: int, d: int) -> set[Word]:
        """All words of length d readable from some state of `mask`."""
        frontier = {(): mask} if mask else {}
        for _ in range(d):
            nxt = {}
            for w, m in frontier.items():
                for a in range(self.size):
                    m2 = self.step(m, a)
                    if m2:
                        nxt[w + (a,)] = m2
            frontier = nxt
        return set(frontier)


@dataclass(frozen=True)
class LanguageTable:
    by_length: dict[int, frozenset[Word]]
    max_length: int
    level: int | None = None

    def __getitem__(self, n: int) -> frozenset[Word]:
        return self.by_length[n]

    def __contains__(self, w) -> bool:
        w = tuple(w)
        return w in self.by_length.get(len(w), ())

    def counts(self) -> list[int]:
        return [len(self.by_length[n]) for n in range(1, self.max_length + 1)]


def language(A: LabeledGraph, n: int) -> LanguageTable:
    """Exact L_m for m <= n by breadth-first extension of reachable state sets."""
    if n < 1:
        raise ValueError("language length must be positive")
    table = {}
    frontier = {(): A.all_states}
    symbols = [(a, (a,), A._cache_f[a]) for a in range(A.size)]
    for m in range(1, n + 1):
        nxt = {}
        for w, mask in frontier.items():
            for a, tail, cache in symbols:
                m2 = cache.get(mask)
                if m2 is None:
                    m2 = A.step(mask, a)
                if m2:
                    nxt[w + tail] = m2
        frontier = nxt
        table[m] = frozenset(frontier)
    return LanguageTable(table, n, A.level)


def relation(A: LabeledGraph, u: Sequence[int]) -> list[int]:
    """R_u as successor masks: bit q' of out[q] iff a path labeled u runs q -> q'."""
    return [A.run(1 << q, u) for q in range(A.n_states)]


def has_cycle(succ: Sequence[int], alive: int) -> bool:
    # peel off states with no successor inside the surviving set
    while True:
        keep = 0
        for q in bits(alive):
            if succ[q] & alive:
                keep |= 1 << q
        if keep == alive:
            return bool(alive)
        alive = keep


def is_periodic_point(A: LabeledGraph, u: Sequence[int]) -> bool:
    """Whether the bi-infinite repetition of u lies in the shift."""
    u = tuple(u)
    if not u:
        raise ValueError("empty word cannot generate a periodic point")
    return has_cycle(relation(A, u), A.all_states)


def periodic_points(A: LabeledGraph, p: int) -> set[Word]:
    """Primitive, rotation-minimal u with |u| <= p and u^inf in the shift."""
    if p < 1:
        raise ValueError("period bound must be positive")
    table = language(A, p)
    out = set()
    for q in range(1, p + 1):
        for u in table[q]:
            if u == min_rotation(u) and is_primitive(u) and is_periodic_point(A, u):
                out.add(u)
    return out


# -- flower automaton ---------------------------------------------------------

class FlowerAutomaton(LabeledGraph):
    """One hub (state 0) with one petal per generator word.

    Petal of w has |w|-1 interior states; `state_info[q]` is
    (word index, symbols of that word read so far), hub is (None, 0).
    """
    HUB = 0

    def __init__(self, origin: GeneratorSet, level: int | None = None):
        origin = origin.canonical()
        edges, edge_info, state_info = [], [], [(None, 0)]
        for k, w in enumerate(origin.words):
            prev = self.HUB
            for i, a in enumerate(w):
                if i == len(w) - 1:
                    nxt = self.HUB
                else:
                    nxt = len(state_info)
                    state_info.append((k, i + 1))
                edges.append((prev, a, nxt))
                edge_info.append((k, i))
                prev = nxt
        super().__init__(origin.size, len(state_info), edges, level=level,
                         name=f"flower{origin.strings()}")
        self.origin = origin
        self.edge_info = tuple(edge_info)
        self.state_info = tuple(state_info)

    def prefix_to(self, q: int) -> Word:
        """Label of the unique hub-to-q path inside q's petal."""
        k, i = self.state_info[q]
        return () if k is None else self.origin.words[k][:i]

    def suffix_from(self, q: int) -> Word:
        """Label of the unique q-to-hub path inside q's petal."""
        k, i = self.state_info[q]
        return () if k is None else self.origin.words[k][i:]


def build_flower(W: GeneratorSet | GeneratorFamily, level: int | None = None) -> FlowerAutomaton:
    if isinstance(W, GeneratorFamily):
        if level is None:
            raise ValueError("a generator family needs a truncation level")
        return FlowerAutomaton(W.truncate(level), level=level)
    return FlowerAutomaton(W, level=level)
