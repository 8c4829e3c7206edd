"""Witnesses for strong property P in coded systems with coprime generator lengths.

Each cylinder word u_i is placed inside a block V_i that is a
concatenation of generator words.  Blocks are padded on both sides with
concatenations of two coprime-length words so that every u_i starts at
the same offset l and every block has the same length N.  Any sequence
of blocks is then again a concatenation, which puts u_{s(j)} at
position l + (j-1)N for an arbitrary pattern s.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .automaton import FlowerAutomaton, NotInLanguage
from .generators import (GeneratorSet, bezout_augment, frobenius_bound, padding_counts,
                         parse_concatenation)
from .words import Word, format_word


@dataclass(frozen=True)
class Embedding:
    block: Word
    offset: int
    parse: tuple[Word, ...]


def embed_in_concatenation(A: FlowerAutomaton, u: Sequence[int]) -> Embedding:
    """Shortest concatenation of generator words containing u.

    Ties go to the smaller offset of u, then to the lower start state.
    """
    u = tuple(u)
    if not u:
        raise ValueError("cannot embed the empty word")
    out_edges: list[list[int]] = [[] for _ in range(A.n_states)]
    for e, (src, _, _) in enumerate(A.edges):
        out_edges[src].append(e)

    # layer: state -> (prefix length, start state, edge path)
    layer = {q: (len(A.prefix_to(q)), q, ()) for q in range(A.n_states)}
    for a in u:
        nxt = {}
        for q in sorted(layer):
            cost, start, path = layer[q]
            for e in out_edges[q]:
                _, sym, dst = A.edges[e]
                if sym != a:
                    continue
                cand = (cost, start, path + (e,))
                if dst not in nxt or cand[:2] < nxt[dst][:2]:
                    nxt[dst] = cand
        layer = nxt
        if not layer:
            raise NotInLanguage(f"{u} is not in the language")

    best = min((cost + len(A.suffix_from(q)), cost, start, q, path)
               for q, (cost, start, path) in layer.items())
    _, offset, start, end, path = best
    pre, suf = A.prefix_to(start), A.suffix_from(end)
    block = pre + u + suf

    # word boundaries are the edges leaving the hub
    W = A.origin.words
    full = [A.edge_info[e] for e in path]
    k0, i0 = A.state_info[start]
    if k0 is not None:
        full = [(k0, i) for i in range(i0)] + full
    k1, i1 = A.state_info[end]
    if k1 is not None:
        full = full + [(k1, i) for i in range(i1, len(W[k1]))]
    parse = tuple(W[k] for k, i in full if i == 0)
    return Embedding(block, offset, parse)


@dataclass(frozen=True)
class PropertyPWitness:
    cylinder_words: tuple[Word, ...]
    coprime_pair: tuple[Word, Word]
    blocks: tuple[Word, ...]
    prefix_len: int
    block_len: int
    parses: tuple[tuple[Word, ...], ...]

    def to_dict(self, size: int = 10) -> dict:
        f = lambda w: format_word(w, size)  # noqa: E731
        return {
            "cylinder_words": [f(w) for w in self.cylinder_words],
            "coprime_pair": [f(w) for w in self.coprime_pair],
            "blocks": [f(w) for w in self.blocks],
            "prefix_len": self.prefix_len,
            "block_len": self.block_len,
            "parses": [[f(w) for w in p] for p in self.parses],
        }


def build_witness(A: FlowerAutomaton, words: Iterable[Sequence[int]],
                  W: GeneratorSet | None = None) -> PropertyPWitness:
    """Blocks V_i with u_i at a common offset and a common block length.

    Raises NotRelativelyPrime when gcd of generator lengths exceeds 1.
    """
    W = (W or A.origin).canonical()
    words = tuple(tuple(u) for u in words)
    if not words:
        raise ValueError("need at least one cylinder word")
    aug = bezout_augment(W)
    (v1, exp1), (v2, exp2) = sorted(
        [(aug.added[0], aug.expansion(0) or [aug.added[0]]),
         (aug.added[1], aug.expansion(1) or [aug.added[1]])],
        key=lambda t: len(t[0]))
    L = frobenius_bound(len(v1), len(v2))

    def pad_words(n):
        r1, r2 = padding_counts(n, len(v1), len(v2))
        return v1 * r1 + v2 * r2, exp1 * r1 + exp2 * r2

    embeds = [embed_in_concatenation(A, u) for u in words]
    offsets = [e.offset for e in embeds]
    l = offsets[0] if len(set(offsets)) == 1 else L + max(offsets)
    blocks, parses = [], []
    for e in embeds:
        pad, pw = pad_words(l - e.offset)
        blocks.append(pad + e.block)
        parses.append(list(pw) + list(e.parse))
    lengths = [len(b) for b in blocks]
    N = lengths[0] if len(set(lengths)) == 1 else L + max(lengths)
    for i, b in enumerate(blocks):
        pad, pw = pad_words(N - len(b))
        blocks[i] = b + pad
        parses[i] = parses[i] + list(pw)
    return PropertyPWitness(words, (v1, v2), tuple(blocks), l, N,
                            tuple(tuple(p) for p in parses))


def check_blocks(W: GeneratorSet, wit: PropertyPWitness) -> list[str]:
    problems = []
    for i, (u, b) in enumerate(zip(wit.cylinder_words, wit.blocks)):
        if len(b) != wit.block_len:
            problems.append(f"block {i} has length {len(b)} != {wit.block_len}")
        if b[wit.prefix_len:wit.prefix_len + len(u)] != u:
            problems.append(f"block {i} does not carry u_{i} at offset {wit.prefix_len}")
        if parse_concatenation(W, b) is None:
            problems.append(f"block {i} is not a concatenation of generator words")
    return problems


def tuples_to_check(n: int, k: int, sample: int | None = None,
                    seed: int | None = None) -> Iterable[tuple[int, ...]]:
    if sample is None:
        return product(range(n), repeat=k)
    if seed is None:
        raise ValueError("sampled tuples need a seed")
    rng = random.Random(seed)
    return [tuple(rng.randrange(n) for _ in range(k)) for _ in range(sample)]


def verify_witness(A: FlowerAutomaton, wit: PropertyPWitness, k: int,
                   sample: int | None = None, seed: int | None = None,
                   W: GeneratorSet | None = None) -> bool:
    """Check the pattern condition for all s in {1..n}^k, or a seeded sample."""
    return not witness_failures(A, wit, k, sample, seed, W)


def witness_failures(A: FlowerAutomaton, wit: PropertyPWitness, k: int,
                     sample: int | None = None, seed: int | None = None,
                     W: GeneratorSet | None = None) -> list[str]:
    if k < 2:
        raise ValueError("k must be at least 2")
    W = (W or A.origin).canonical()
    failures = check_blocks(W, wit)
    if failures:
        return failures
    N, l = wit.block_len, wit.prefix_len
    for s in tuples_to_check(len(wit.blocks), k, sample, seed):
        x = tuple(a for i in s for a in wit.blocks[i])
        if not A.contains(x):
            failures.append(f"pattern {s}: concatenation not in the language")
            continue
        for j, i in enumerate(s):
            u = wit.cylinder_words[i]
            at = l + j * N
            if x[at:at + len(u)] != u:
                failures.append(f"pattern {s}: u_{i} missing at {at}")
    return failures
