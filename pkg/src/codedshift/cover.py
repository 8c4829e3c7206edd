"""The integer-line cover: a mixing coded system with only even periods.

Vertices are the integers.  Vertex b has a forward edge to b+1 labeled
x_b in {0, 1} and receives a backward edge from b+1 labeled
y_b = x_b + 2 in {2, 3}, where x is a point of a minimal aperiodic
binary subshift.  The label alphabet is {0, 1, 2, 3}.  Because forward
and backward labels are disjoint, a label word and a start vertex fix
the walk.

Everything is computed on the finite window of vertices -B..B.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .automaton import LabeledGraph, NotInLanguage
from .dynamics import UNKNOWN, ReturnSetReport, longest_run, merged_overlap
from .words import Word, WordError, min_rotation, primitive_root

SIZE = 4


# -- substitution sequences ----------------------------------------------------

def _first_return(f, s, limit):
    seen, cur = [], s
    for p in range(1, limit + 1):
        cur = f(cur)
        if cur == s:
            return p
        seen.append(cur)
    raise WordError(f"symbol {s} is not periodic under the first/last letter map")


@dataclass(frozen=True)
class SequenceProvider:
    """Two-sided fixed point of a substitution, optionally recoded and subsampled.

    The right half x_0 x_1 ... is the limit of sigma^p(right_seed); the
    left half ... x_-2 x_-1 is the limit of sigma^q(left_seed), read from
    its end.  `k_power` keeps every k-th symbol: x'_i = x_{k i}.
    """
    name: str
    substitution: Mapping[int, Word]
    left_seed: int
    right_seed: int
    k_power: int = 1
    coding: Mapping[int, int] | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        sub = {int(a): tuple(w) for a, w in self.substitution.items()}
        alphabet = set(sub)
        for a, w in sub.items():
            if not w:
                raise WordError(f"substitution is erasing on {a}")
            if not set(w) <= alphabet:
                raise WordError(f"image of {a} uses symbols outside {sorted(alphabet)}")
        if self.left_seed not in alphabet or self.right_seed not in alphabet:
            raise WordError("seeds must be substitution symbols")
        if self.k_power < 1:
            raise WordError("k_power must be positive")
        coding = self.coding or {a: a for a in alphabet}
        if set(coding) != alphabet or not set(coding.values()) <= {0, 1}:
            raise WordError("the coded sequence must be binary")
        object.__setattr__(self, "substitution", sub)
        object.__setattr__(self, "coding", dict(coding))

    @classmethod
    def from_json(cls, rule: Mapping[str, str], name="custom", k_power=1) -> "SequenceProvider":
        sub = {int(a): tuple(int(c) for c in str(w)) for a, w in rule.items()}
        return cls(name, sub, *default_seeds(sub), k_power=k_power)

    def apply(self, w: Word) -> Word:
        return tuple(b for a in w for b in self.substitution[a])

    def _half(self, seed: int, need: int, right: bool) -> Word:
        key = (seed, right)
        have = self._cache.get(key, ())
        if len(have) >= need:
            return have
        pick = (lambda a: self.substitution[a][0]) if right else (lambda a: self.substitution[a][-1])
        p = _first_return(pick, seed, len(self.substitution) + 1)
        w = (seed,)
        while len(w) < need:
            prev = len(w)
            for _ in range(p):
                w = self.apply(w)
            if len(w) == prev:
                raise WordError(f"substitution does not grow from {seed}")
        self._cache[key] = w
        return w

    def raw(self, lo: int, hi: int) -> Word:
        """Uncoded, unsampled symbols at positions lo..hi-1."""
        right = self._half(self.right_seed, max(hi, 1), True)
        left = self._half(self.left_seed, max(-lo, 1), False)
        out = []
        for i in range(lo, hi):
            out.append(right[i] if i >= 0 else left[len(left) + i])
        return tuple(out)

    def x(self, lo: int, hi: int) -> Word:
        """Binary symbols x_lo .. x_{hi-1}."""
        k = self.k_power
        base = self.raw(k * lo, k * (hi - 1) + 1) if hi > lo else ()
        return tuple(self.coding[a] for a in base[::k])


def default_seeds(sub: Mapping[int, Word]) -> tuple[int, int]:
    """Anchor x_-1 x_0 as (last symbol of sigma(1), first symbol of sigma(0))."""
    if any(not w for w in sub.values()):
        raise WordError("substitution is erasing")
    left = sub[1][-1] if 1 in sub else min(sub)
    right = sub[0][0] if 0 in sub else min(sub)
    return left, right


PROVIDERS = {
    "thue-morse": lambda k=1: SequenceProvider(
        "thue-morse", {0: (0, 1), 1: (1, 0)}, 0, 0, k_power=k),
    "fibonacci": lambda k=1: SequenceProvider(
        "fibonacci", {0: (0, 1), 1: (0,)}, 0, 0, k_power=k),
    # ternary Chacon a->aabc, b->bc, c->abc, coded a,c->0, b->1 (binary Chacon word)
    "chacon": lambda k=1: SequenceProvider(
        "chacon", {0: (0, 0, 1, 2), 1: (1, 2), 2: (0, 1, 2)}, 2, 0, k_power=k,
        coding={0: 0, 1: 1, 2: 0}),
}


def get_provider(name: str, k_power: int = 1) -> SequenceProvider:
    try:
        return PROVIDERS[name](k_power)
    except KeyError:
        raise WordError(f"unknown provider {name!r}; choose from {sorted(PROVIDERS)}") from None


def sequence_window(p: SequenceProvider, B: int) -> Word:
    """x_{-B} .. x_{B}."""
    if B < 1:
        raise ValueError("window radius must be positive")
    return p.x(-B, B + 1)


# -- the cover -------------------------------------------------------------------

@dataclass(frozen=True)
class WalkTrace:
    label: Word
    start: int
    end: int
    m_u: int
    M_u: int
    x_of_u: Word
    y_of_u: Word


class LineCoverSystem:
    def __init__(self, provider: SequenceProvider, B: int):
        if B < 1:
            raise ValueError("window radius must be positive")
        self.provider = provider
        self.B = B
        self._x = provider.x(-B, B)  # edge labels x_{-B} .. x_{B-1}

    def xb(self, b: int) -> int:
        return self._x[b + self.B]

    def yb(self, b: int) -> int:
        return self._x[b + self.B] + 2

    @property
    def vertices(self) -> range:
        return range(-self.B, self.B + 1)

    def step(self, b: int, a: int) -> int | None:
        if a in (0, 1):
            return b + 1 if b < self.B and self.xb(b) == a else None
        if a in (2, 3):
            return b - 1 if b > -self.B and self.yb(b - 1) == a else None
        raise WordError(f"symbol {a} outside the cover alphabet")

    def walk(self, u: Sequence[int], start: int) -> WalkTrace | None:
        u = tuple(u)
        b = lo = hi = start
        for a in u:
            b = self.step(b, a)
            if b is None:
                return None
            lo, hi = min(lo, b), max(hi, b)
        xs = tuple(self.xb(i) for i in range(lo, hi))
        ys = tuple(self.yb(i) for i in range(hi - 1, lo - 1, -1))
        return WalkTrace(u, start, b, lo, hi, xs, ys)

    def walks_of_length(self, n: int, start: int) -> list[WalkTrace]:
        out = []

        def go(b, label):
            if len(label) == n:
                out.append(self.walk(label, start))
                return
            for a in range(SIZE):
                b2 = self.step(b, a)
                if b2 is not None:
                    go(b2, label + (a,))
        go(start, ())
        return out

    def safe_starts(self, n: int) -> range:
        if n > self.B:
            raise ValueError(f"length {n} exceeds the window radius {self.B}")
        return range(-self.B + n, self.B - n + 1)

    def realizations(self, u: Sequence[int]) -> list[WalkTrace]:
        return [t for b in self.vertices if (t := self.walk(u, b)) is not None]


def cover_language(S: LineCoverSystem, n: int) -> set[Word]:
    """Labels of all length-n walks from starts whose n-ball lies in the window."""
    if n < 1:
        raise ValueError("length must be positive")
    out = set()
    seen_local = set()
    for b in S.safe_starts(n):
        local = S._x[b - n + S.B:b + n + S.B]
        if local in seen_local:
            continue
        seen_local.add(local)
        out.update(t.label for t in S.walks_of_length(n, b))
    return out


def closed_walks(S: LineCoverSystem, p: int) -> list[WalkTrace]:
    """Every walk of length 1..p that returns to its start, window permitting."""
    if p < 1:
        raise ValueError("period bound must be positive")
    out = []
    for q in range(1, p + 1):
        reach = (q + 1) // 2
        for b in range(-S.B + reach, S.B - reach + 1):
            def go(v, label):
                left = q - len(label)
                if abs(v - b) > left:
                    return
                if left == 0:
                    out.append(S.walk(label, b))
                    return
                for a in range(SIZE):
                    v2 = S.step(v, a)
                    if v2 is not None:
                        go(v2, label + (a,))
            go(b, ())
    return out


def cover_periodic(S: LineCoverSystem, p: int) -> list[tuple[Word, int]]:
    """(rotation-minimal primitive word, least period) for periodic points from closed walks."""
    if p > S.B:
        raise ValueError(f"period bound {p} exceeds the window radius {S.B}")
    found = set()
    for t in closed_walks(S, p):
        root = primitive_root(t.label)
        found.add((min_rotation(root), len(root)))
    return sorted(found, key=lambda wp: (wp[1], wp[0]))


def cover_return_set(S: LineCoverSystem, u: Sequence[int], v: Sequence[int], H: int) -> ReturnSetReport:
    """Return times seen inside the window.  Never certifies cofiniteness."""
    u, v = tuple(u), tuple(v)
    if not u or not v:
        raise ValueError("cylinder words must be non-empty")
    ends = {t.end for t in S.realizations(u)}
    starts = {t.start for t in S.realizations(v)}
    if not ends:
        raise NotInLanguage(f"u={u} is not realized in the window")
    if not starts:
        raise NotInLanguage(f"v={v} is not realized in the window")
    if H < 0:
        raise ValueError("horizon must be non-negative")
    present = set()
    for n in range(min(len(u), H + 1)):
        w = merged_overlap(u, v, n)
        if w is not None and S.realizations(w):
            present.add(n)
    # a gap of g steps joins e to f iff |f - e| <= g with matching parity
    nearest = {0: None, 1: None}
    for e in ends:
        for f in starts:
            d = abs(f - e)
            if nearest[d % 2] is None or d < nearest[d % 2]:
                nearest[d % 2] = d
    for n in range(len(u), H + 1):
        g = n - len(u)
        d = nearest[g % 2]
        if d is not None and d <= g:
            present.add(n)
    rep = ReturnSetReport(u, v, H, frozenset(present), cofinite=UNKNOWN,
                          thickest_interval=longest_run(present))
    return rep


@dataclass
class WindowSFT:
    """Edge shift of the window graph: one symbol per edge.

    Symbol 2(b+B) is the forward edge b -> b+1, symbol 2(b+B)+1 the
    backward edge b+1 -> b.  `labels` maps symbols to cover labels.
    """
    B: int
    graph: LabeledGraph
    labels: dict[int, int]

    def label_graph(self) -> LabeledGraph:
        """The same graph carrying cover labels instead of edge names."""
        edges = [(s, self.labels[a], d) for s, a, d in self.graph.edges]
        return LabeledGraph(SIZE, self.graph.n_states, edges, name=f"line-window-labels[{self.B}]")


def sft_window(S: LineCoverSystem, B: int | None = None) -> WindowSFT:
    B = S.B if B is None else B
    if not 1 <= B <= S.B:
        raise ValueError(f"window radius must lie in 1..{S.B}")
    if 4 * B > 64:
        raise ValueError("edge alphabet would exceed 64 symbols (B <= 16)")
    edges, labels = [], {}
    for b in range(-B, B):
        fwd, bwd = 2 * (b + B), 2 * (b + B) + 1
        src, dst = b + B, b + B + 1
        edges.append((src, fwd, dst))
        edges.append((dst, bwd, src))
        labels[fwd], labels[bwd] = S.xb(b), S.yb(b)
    graph = LabeledGraph(4 * B, 2 * B + 1, edges, name=f"line-window[{B}]")
    return WindowSFT(B, graph, labels)
