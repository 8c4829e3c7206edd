"""Generator sets of coded systems and the arithmetic of their lengths."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Callable, Iterator, Sequence

from .words import Alphabet, Word, WordError, format_word, parse_word


class NotRelativelyPrime(ValueError):
    """Raised when an operation needs gcd of generator lengths to be 1."""


@dataclass(frozen=True)
class GeneratorSet:
    size: int
    words: tuple[Word, ...]

    def __post_init__(self):
        alpha = Alphabet(self.size)
        words = tuple(alpha.check(w) for w in self.words)
        if not words:
            raise WordError("generator set must be non-empty")
        if any(len(w) == 0 for w in words):
            raise WordError("generator words must be non-empty")
        object.__setattr__(self, "words", words)

    @classmethod
    def from_strings(cls, size: int, words: Sequence) -> "GeneratorSet":
        return cls(size, tuple(parse_word(w, size) for w in words))

    def canonical(self) -> "GeneratorSet":
        """Drop duplicates, keeping first occurrences in order."""
        return GeneratorSet(self.size, tuple(dict.fromkeys(self.words)))

    @property
    def lengths(self) -> list[int]:
        return [len(w) for w in self.words]

    def strings(self) -> list[str]:
        return [format_word(w, self.size) for w in self.words]

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


def gcd_lengths(W: GeneratorSet) -> int:
    return reduce(gcd, W.lengths)


# -- Bezout augmentation ----------------------------------------------------

@dataclass(frozen=True)
class BezoutAugmentation:
    original: GeneratorSet
    added: tuple[Word, Word]
    # coefficient per word of `original` (0 for unused words); positive
    # entries build added[0], negative entries build added[1]
    coefficients: tuple[int, ...]
    coprime_pair_lengths: tuple[int, int]

    @property
    def augmented(self) -> GeneratorSet:
        return GeneratorSet(self.original.size, self.original.words + self.added).canonical()

    def expansion(self, which: int) -> list[Word]:
        """Original words, in order, whose concatenation is added[which]."""
        sign = 1 if which == 0 else -1
        out = []
        for w, c in zip(self.original.words, self.coefficients):
            if c * sign > 0:
                out.extend([w] * abs(c))
        return out


def _vectors_with_norm(m: int, s: int) -> Iterator[tuple[int, ...]]:
    if m == 0:
        if s == 0:
            yield ()
        return
    for head in range(s, -1, -1):
        for tail in _vectors_with_norm(m - 1, s - head):
            if head == 0:
                yield (0,) + tail
            else:
                yield (head,) + tail
                yield (-head,) + tail


def _ext_euclid(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_euclid(b, a % b)
    return g, y, x - (a // b) * y


def bezout_coefficients(lengths: Sequence[int], max_norm: int | None = None) -> tuple[int, ...]:
    """Integer c with sum(c_i * lengths_i) == 1, smallest L1 norm first.

    Among equal norms the smallest max |c_i| wins.

    Falls back to pairwise extended Euclid when no vector of norm
    <= max_norm exists.
    """
    lengths = list(lengths)
    if reduce(gcd, lengths) != 1:
        raise NotRelativelyPrime(f"gcd of {lengths} is not 1")
    if max_norm is None:
        max_norm = 2 * max(lengths) if len(lengths) <= 4 else 6
    for s in range(1, max_norm + 1):
        hits = [c for c in _vectors_with_norm(len(lengths), s)
                if sum(ci * a for ci, a in zip(c, lengths)) == 1]
        if hits:
            # balanced exponents first, then earlier words positive
            return min(hits, key=lambda c: (max(map(abs, c)), tuple(-ci for ci in c)))
    # extended Euclid, folding one length at a time
    coeffs = [1] + [0] * (len(lengths) - 1)
    g = lengths[0]
    for i in range(1, len(lengths)):
        g2, x, y = _ext_euclid(g, lengths[i])
        coeffs = [c * x for c in coeffs]
        coeffs[i] = y
        g = g2
    return tuple(coeffs)


def coprime_pair(W: GeneratorSet) -> tuple[int, int] | None:
    """Indices (i, j) of the first two distinct words with coprime lengths.

    Falls back to (i, i) for a word of length 1 when no distinct pair exists.
    """
    n = len(W.words)
    for i in range(n):
        for j in range(i + 1, n):
            if gcd(len(W.words[i]), len(W.words[j])) == 1:
                return i, j
    for i in range(n):
        if len(W.words[i]) == 1:
            return i, i
    return None


def bezout_augment(W: GeneratorSet) -> BezoutAugmentation:
    W = W.canonical()
    if gcd_lengths(W) != 1:
        raise NotRelativelyPrime(
            f"gcd of generator lengths is {gcd_lengths(W)}; not a relatively prime generator")
    pair = coprime_pair(W)
    if pair is not None:
        i, j = pair
        coeffs = [0] * len(W.words)
        coeffs[i] = 1
        if j != i:
            coeffs[j] = -1
        a, b = W.words[i], W.words[j]
        return BezoutAugmentation(W, (a, b), tuple(coeffs), (len(a), len(b)))

    # greedy subset: take a word only if it lowers the running gcd
    chosen, g = [], 0
    for idx, w in enumerate(W.words):
        g2 = gcd(g, len(w))
        if g2 != g:
            chosen.append(idx)
            g = g2
        if g == 1:
            break
    c = bezout_coefficients([len(W.words[i]) for i in chosen])
    coeffs = [0] * len(W.words)
    for idx, ci in zip(chosen, c):
        coeffs[idx] = ci
    pos = tuple(a for idx in chosen if coeffs[idx] > 0 for a in W.words[idx] * coeffs[idx])
    neg = tuple(a for idx in chosen if coeffs[idx] < 0 for a in W.words[idx] * -coeffs[idx])
    assert gcd(len(pos), len(neg)) == 1 and len(pos) - len(neg) == 1
    return BezoutAugmentation(W, (pos, neg), tuple(coeffs), (len(pos), len(neg)))


# -- two coprime lengths ------------------------------------------------------

def _check_coprime(a1: int, a2: int):
    if a1 < 1 or a2 < 1:
        raise ValueError("lengths must be positive")
    if gcd(a1, a2) != 1:
        raise NotRelativelyPrime(f"gcd({a1}, {a2}) = {gcd(a1, a2)}")


def frobenius_bound(a1: int, a2: int) -> int:
    """Least L such that every n >= L is r1*a1 + r2*a2 with r1, r2 >= 0."""
    _check_coprime(a1, a2)
    return (a1 - 1) * (a2 - 1)


def represent(n: int, a1: int, a2: int) -> tuple[int, int] | None:
    """n = r1*a1 + r2*a2 with r1, r2 >= 0 and r2 minimal, or None."""
    _check_coprime(a1, a2)
    if n < 0:
        return None
    for r2 in range(n // a2 + 1):
        rest = n - r2 * a2
        if rest % a1 == 0:
            return rest // a1, r2
    return None


def padding_counts(n: int, a1: int, a2: int) -> tuple[int, int]:
    """(r1, r2) with r1*a1 + r2*a2 == n and the fewest words r1 + r2.

    Ties (none exist for coprime lengths, kept for safety) prefer more
    copies of the shorter length.
    """
    _check_coprime(a1, a2)
    best = None
    for r2 in range(n // a2 + 1):
        rest = n - r2 * a2
        if rest % a1:
            continue
        r1 = rest // a1
        short_copies = r1 if a1 <= a2 else r2
        key = (r1 + r2, -short_copies)
        if best is None or key < best[0]:
            best = (key, r1, r2)
    if best is None:
        raise ValueError(f"{n} is not a combination of {a1} and {a2}")
    return best[1], best[2]


def padding(n: int, v1: Word, v2: Word) -> Word:
    r1, r2 = padding_counts(n, len(v1), len(v2))
    return v1 * r1 + v2 * r2


# -- parsing ------------------------------------------------------------------

def parse_concatenation(W: GeneratorSet, word: Sequence[int]) -> list[int] | None:
    """Indices of generator words whose concatenation is `word`, or None.

    Plain word-break dynamic program; deliberately independent of the
    automaton code so it can serve as a cross-check.
    """
    word = tuple(word)
    n = len(word)
    back: list[tuple[int, int] | None] = [None] * (n + 1)
    reach = [False] * (n + 1)
    reach[0] = True
    for i in range(n):
        if not reach[i]:
            continue
        for k, g in enumerate(W.words):
            j = i + len(g)
            if j <= n and not reach[j] and word[i:j] == g:
                reach[j] = True
                back[j] = (i, k)
    if not reach[n] or n == 0:
        return None
    out = []
    j = n
    while j:
        i, k = back[j]
        out.append(k)
        j = i
    return out[::-1]


# -- countable generators -----------------------------------------------------

@dataclass(frozen=True)
class GeneratorFamily:
    """Countable generator W given through nested finite truncations W_t."""
    size: int
    kind: str
    params: dict = field(compare=False)
    rule: Callable[[int], list[Word]] = field(compare=False, repr=False)

    def truncate(self, level: int) -> GeneratorSet:
        words = self.rule(level)
        if not words:
            raise WordError(f"family {self.kind!r} is empty at level {level}")
        return GeneratorSet(self.size, tuple(words)).canonical()


def power_family(size: int, u: Word, v: Word) -> GeneratorFamily:
    """{u^n v : 0 <= n <= t}."""
    Alphabet(size).check(u), Alphabet(size).check(v)
    if not v and not u:
        raise WordError("power family needs a non-empty word")

    def rule(t):
        return [u * n + v for n in range(t + 1) if u * n + v]
    return GeneratorFamily(size, "power", {"u": u, "v": v}, rule)


def levels_family(size: int, levels: Sequence[Sequence[Word]]) -> GeneratorFamily:
    """W_t is the union of the first t+1 listed levels."""
    levels = [[Alphabet(size).check(w) for w in lv] for lv in levels]

    def rule(t):
        return [w for lv in levels[:t + 1] for w in lv]
    return GeneratorFamily(size, "levels", {"levels": levels}, rule)


def by_length_family(size: int, words: Sequence[Word]) -> GeneratorFamily:
    """W_t is every listed word of length <= t."""
    words = [Alphabet(size).check(w) for w in words]

    def rule(t):
        return [w for w in words if len(w) <= t]
    return GeneratorFamily(size, "by_length", {"words": words}, rule)
