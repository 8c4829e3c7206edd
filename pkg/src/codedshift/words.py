"""Alphabets, words and cylinders.

Words are plain tuples of non-negative ints.  Symbols of an alphabet of
size ``k`` are ``0..k-1``.  Text I/O uses one digit per symbol when
``k <= 10`` and comma separated integers otherwise; JSON arrays of ints
are accepted everywhere a word is read.
"""
from __future__ import annotations

import json
from itertools import product
from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]

MAX_ALPHABET = 64


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    size: int

    def __post_init__(self):
        if not 1 <= self.size <= MAX_ALPHABET:
            raise WordError(f"alphabet size must be in 1..{MAX_ALPHABET}, got {self.size}")

    @property
    def symbols(self) -> range:
        return range(self.size)

    def check(self, w: Sequence[int]) -> Word:
        w = tuple(w)
        for a in w:
            if not (isinstance(a, int) and 0 <= a < self.size):
                raise WordError(f"symbol {a!r} not in alphabet of size {self.size}")
        return w


@dataclass(frozen=True)
class Cylinder:
    """The set of points reading `word` at coordinates offset..offset+|word|-1."""
    word: Word
    offset: int = 0


def parse_word(text, size: int) -> Word:
    """Read a word from a digit string, comma list, or JSON int array."""
    alpha = Alphabet(size)
    if isinstance(text, (list, tuple)):
        return alpha.check(text)
    text = str(text).strip()
    if text.startswith("["):
        return alpha.check(json.loads(text))
    if text in ("", "ε", "-"):
        return ()
    if size <= 10 and "," not in text:
        if not text.isdigit():
            raise WordError(f"bad word {text!r}")
        return alpha.check(int(c) for c in text)
    try:
        return alpha.check(int(c) for c in text.split(","))
    except ValueError as exc:
        raise WordError(f"bad word {text!r}") from exc


def format_word(w: Sequence[int], size: int = 10) -> str:
    if size <= 10:
        return "".join(str(a) for a in w)
    return ",".join(str(a) for a in w)


def factors(w: Sequence[int], n: int) -> set[Word]:
    if n < 1:
        raise WordError("factor length must be positive")
    w = tuple(w)
    return {w[i:i + n] for i in range(len(w) - n + 1)}


def is_factor(u: Sequence[int], w: Sequence[int]) -> bool:
    u, w = tuple(u), tuple(w)
    if not u:
        return True
    n = len(u)
    return any(w[i:i + n] == u for i in range(len(w) - n + 1))


def occurrences(u: Sequence[int], w: Sequence[int]) -> list[int]:
    u, w = tuple(u), tuple(w)
    n = len(u)
    return [i for i in range(len(w) - n + 1) if w[i:i + n] == u]


def least_period(w: Sequence[int]) -> int:
    """Smallest p >= 1 with w[i] == w[i+p] for all valid i.

    Computed from the KMP border table: period = |w| - longest border.
    """
    w = tuple(w)
    if not w:
        raise WordError("least period of the empty word is undefined")
    border = [0] * len(w)
    k = 0
    for i in range(1, len(w)):
        while k and w[i] != w[k]:
            k = border[k - 1]
        if w[i] == w[k]:
            k += 1
        border[i] = k
    return len(w) - border[-1]


def primitive_root(w: Sequence[int]) -> Word:
    """Shortest r with w == r^j.  A word is in its least period iff it is its own root."""
    w = tuple(w)
    if not w:
        raise WordError("empty word has no primitive root")
    p = least_period(w)
    if len(w) % p == 0:
        return w[:p]
    return w


def is_primitive(w: Sequence[int]) -> bool:
    return primitive_root(w) == tuple(w)


def min_rotation(w: Sequence[int]) -> Word:
    w = tuple(w)
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def all_words(size: int, n: int) -> Iterable[Word]:
    return product(range(size), repeat=n)
