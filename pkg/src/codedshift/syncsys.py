"""Follower sets, synchronizing words and half-synchronized generators.

Half-synchronized systems are built from a word m and a set U of words
closed under "cut after an occurrence of m" (u = u1 m u2 in U implies
u2 in U); the generator is {u m : u in U}.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .automaton import FlowerAutomaton, LabeledGraph
from .dynamics import NO, UNKNOWN, YES
from .generators import GeneratorFamily, GeneratorSet
from .words import Alphabet, Word, WordError, format_word, is_factor, occurrences


@dataclass(frozen=True)
class FollowerTable:
    base: Word
    depth: int
    extensions: frozenset[Word]

    def restrict(self, d: int) -> frozenset[Word]:
        return frozenset(v[:d] for v in self.extensions)


def follower_set(A: LabeledGraph, w: Sequence[int], d: int) -> FollowerTable:
    """{v in L_d : wv in L}."""
    w = tuple(w)
    if d < 1:
        raise ValueError("depth must be positive")
    A.require(w)
    return FollowerTable(w, d, frozenset(A.words_from(A.ends(w), d)))


def _follower_gap(A: LabeledGraph, big: int, small: int) -> Word | None:
    """Shortest v readable from `big` but not from `small`, if any."""
    start = (big, small)
    prev = {start: None}
    queue = deque([start])
    while queue:
        b, s = queue.popleft()
        for a in range(A.size):
            b2 = A.step(b, a)
            if not b2:
                continue
            s2 = A.step(s, a)
            key = (b2, s2)
            if key in prev:
                continue
            prev[key] = ((b, s), a)
            if not s2:
                v = []
                cur = key
                while prev[cur] is not None:
                    cur, sym = prev[cur]
                    v.append(sym)
                return tuple(reversed(v))
            queue.append(key)
    return None


@dataclass
class SyncResult:
    verdict: str
    counterexample: tuple[Word, Word] | None = None
    method: str = ""

    def to_dict(self, size: int = 10) -> dict:
        ce = None
        if self.counterexample:
            ce = [format_word(x, size) for x in self.counterexample]
        return {"verdict": self.verdict, "counterexample": ce, "method": self.method}


def _bounded_counterexample(A: LabeledGraph, w: Word, bound: int) -> tuple[Word, Word] | None:
    lefts = sorted((u for n in range(1, bound + 1) for u in product(range(A.size), repeat=n)
                    if A.contains(u + w)), key=lambda u: (len(u), u))
    rights = sorted((v for n in range(1, bound + 1) for v in A.words_from(A.ends(w), n)),
                    key=lambda v: (len(v), v))
    best = None
    for u in lefts:
        mask = A.ends(u + w)
        for v in rights:
            if best is not None and len(u) + len(v) >= sum(map(len, best)):
                break
            if not A.run(mask, v):
                best = (u, v)
                break
    return best


def is_synchronizing(A: LabeledGraph, w: Sequence[int], bound: int = 3) -> SyncResult:
    """Decide whether uw, wv in L always gives uwv in L.

    A bounded search over |u|, |v| <= bound runs first.  On exact
    presentations the question is then settled by comparing the
    follower set of w with that of every left context: the contexts
    reachable in the subset automaton are finite.  Truncations of
    countable generators only ever get "unknown".
    """
    w = tuple(w)
    A.require(w)
    if not A.exact:
        return SyncResult(UNKNOWN, method="truncated presentation")
    ce = _bounded_counterexample(A, w, bound)
    if ce is not None:
        return SyncResult(NO, ce, method=f"exhaustive search, |u|,|v| <= {bound}")

    target = A.ends(w)
    prev: dict[int, tuple[int, int] | None] = {A.all_states: None}
    queue = deque([A.all_states])
    while queue:
        X = queue.popleft()
        Y = A.run(X, w)
        if Y and Y != target:
            v = _follower_gap(A, target, Y)
            if v is not None:
                u = []
                cur = X
                while prev[cur] is not None:
                    cur, sym = prev[cur]
                    u.append(sym)
                u = tuple(reversed(u))
                return SyncResult(NO, (u, v), method="subset-automaton context search")
        for a in range(A.size):
            X2 = A.step(X, a)
            if X2 and X2 not in prev:
                prev[X2] = (X, a)
                queue.append(X2)
    return SyncResult(YES, method="subset-automaton context search")


def synchronized_generator(A: LabeledGraph, alpha: Sequence[int], n: int) -> GeneratorSet:
    """{w alpha : |w alpha| <= n, alpha w alpha in L, alpha not a factor of w}.

    The empty w is allowed (giving alpha itself) when alpha alpha is in L.
    """
    alpha = tuple(alpha)
    if not alpha:
        raise ValueError("alpha must be non-empty")
    A.require(alpha, "alpha")
    out = []
    frontier = {(): A.ends(alpha)}
    for length in range(0, n - len(alpha) + 1):
        for w in sorted(frontier):
            if A.run(frontier[w], alpha):
                out.append(w + alpha)
        if length == n - len(alpha):
            break
        nxt = {}
        for w, mask in frontier.items():
            for a in range(A.size):
                w2 = w + (a,)
                if is_factor(alpha, w2):
                    continue  # every extension contains alpha too
                m2 = A.step(mask, a)
                if m2:
                    nxt[w2] = m2
        frontier = nxt
    if not out:
        raise WordError(f"no generator word of length <= {n} for alpha={alpha}")
    return GeneratorSet(A.size, tuple(out))


# -- half-synchronized construction ----------------------------------------------

class ClosureViolation(ValueError):
    def __init__(self, u: Word, u1: Word, u2: Word):
        self.u, self.u1, self.u2 = u, u1, u2
        super().__init__(f"u={u} splits as u1={u1} . m . u2={u2} but u2 is not in U")


@dataclass(frozen=True)
class HalfSyncSpec:
    size: int
    m: Word
    kind: str  # "mfree" | "list" | "power"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        Alphabet(self.size).check(self.m)
        if not self.m:
            raise WordError("m must be non-empty")
        if self.kind not in ("mfree", "list", "power"):
            raise WordError(f"unknown U kind {self.kind!r}")

    def enumerate_U(self, t: int) -> list[Word]:
        """Words of U with length <= t, shortest first."""
        if self.kind == "mfree":
            out = [u for n in range(t + 1) for u in product(range(self.size), repeat=n)
                   if not is_factor(self.m, u)]
        elif self.kind == "list":
            words = [Alphabet(self.size).check(u) for u in self.params["words"]]
            out = sorted({u for u in words if len(u) <= t}, key=lambda u: (len(u), u))
        else:
            base = Alphabet(self.size).check(self.params["word"])
            if not base:
                out = [()]
            else:
                out = [base * n for n in range(t // len(base) + 1)]
        return out

    def check_closure(self, t: int) -> list[Word]:
        U = self.enumerate_U(t)
        members = set(U)
        for u in U:
            for i in occurrences(self.m, u):
                u2 = u[i + len(self.m):]
                if u2 not in members:
                    raise ClosureViolation(u, u[:i], u2)
        return U


def build_half_sync(spec: HalfSyncSpec, level: int) -> GeneratorFamily:
    """Family with W_t = {u m : u in U, |u| <= t}; closure is checked at every level used."""
    spec.check_closure(level)

    def rule(t):
        return [u + spec.m for u in spec.check_closure(t)]
    return GeneratorFamily(spec.size, "half_sync",
                           {"m": spec.m, "U": {"kind": spec.kind, **spec.params}, "level": level},
                           rule)


@dataclass
class HalfSyncCheck:
    verdict: str  # "consistent" | "inconsistent"
    depth: int
    classes_checked: int  # contexts with distinct end-state sets
    context: Word | None = None  # offending concatenation
    gap: Word | None = None      # follower of m missing after `context`


def verify_half_sync(A: FlowerAutomaton, m: Sequence[int], d: int,
                     W: GeneratorSet | None = None) -> HalfSyncCheck:
    """Compare F_d(m) with F_d(c) for every concatenation c of <= d generator
    words that ends in m.  Agreement is evidence only.
    """
    m = tuple(m)
    A.require(m, "m")
    if d < 1:
        raise ValueError("depth must be positive")
    W = (W or A.origin).canonical()
    target = A.words_from(A.ends(m), d)
    checked = 0
    seen = set()
    layer = {(): None}
    for _ in range(d):
        nxt = {}
        for c in layer:
            for g in W.words:
                c2 = c + g
                key = (A.ends(c2), c2[-len(m):])
                if key in seen:
                    continue
                seen.add(key)
                nxt[c2] = None
                if c2[-len(m):] != m:
                    continue
                checked += 1
                got = A.words_from(key[0], d)
                if got != target:
                    gap = min(target - got, key=lambda v: v) if target - got else None
                    return HalfSyncCheck("inconsistent", d, checked, c2, gap)
        layer = nxt
    return HalfSyncCheck("consistent", d, checked)
