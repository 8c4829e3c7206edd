"""Return-time sets of cylinders and the transitivity / mixing hierarchy.

For n >= |u| the question "is n in N([u], [v])" is whether the set of
states ending a u-path reaches, in exactly n - |u| unlabeled steps, a
state starting a v-path.  The reachable sets form an orbit of a map on
a finite set, so the orbit is eventually periodic; detecting the cycle
pins down N([u], [v]) for every n, not just n <= H.

Only n >= 0 is stored.  The negative half of N(U, V) is -N(V, U), and
`classify` always looks at both orders of a pair.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Sequence

from .automaton import LabeledGraph, NotInLanguage, language
from .words import Word, format_word

YES, NO, UNKNOWN = "yes", "no", "unknown"


def combine(verdicts) -> str:
    verdicts = list(verdicts)
    if NO in verdicts:
        return NO
    if UNKNOWN in verdicts:
        return UNKNOWN
    return YES


@dataclass
class Orbit:
    """Reachable-state masks after j = 0, 1, ... unlabeled steps."""
    masks: list[int]
    cycle_start: int | None  # index where the periodic part begins
    period: int | None


def orbit(A: LabeledGraph, start: int, max_steps: int) -> Orbit:
    seen: dict[int, int] = {}
    masks = []
    mask = start
    for j in range(max_steps + 1):
        if mask in seen:
            i = seen[mask]
            return Orbit(masks, i, j - i)
        seen[mask] = j
        masks.append(mask)
        mask = A.step_any(mask)
    return Orbit(masks, None, None)


@dataclass
class ReturnSetReport:
    u: Word
    v: Word
    horizon: int
    present: frozenset[int]
    preperiod: int | None = None
    period: int | None = None
    # residues r (mod period) with every n >= preperiod, n = r present
    tail: frozenset[int] = frozenset()
    cofinite: str = UNKNOWN
    thickest_interval: int = 0
    level: int | None = None

    @property
    def certified(self) -> bool:
        return self.period is not None

    def member(self, n: int) -> bool:
        if n < 0:
            raise ValueError("only n >= 0 is stored; swap u and v for the negative side")
        if n <= self.horizon:
            return n in self.present
        if not self.certified:
            raise ValueError(f"n={n} is past the horizon of an uncertified report")
        return n % self.period in self.tail

    def thick(self) -> str:
        """Arbitrarily long runs on the non-negative side."""
        if self.certified:
            return YES if len(self.tail) == self.period else NO
        return UNKNOWN

    def meets_multiples(self, k: int) -> str:
        """Whether some n >= 0 divisible by k lies in the set."""
        return self.hits_residue(0, k)

    def hits_residue(self, c: int, k: int) -> str:
        """Whether some n >= 0 with n = c (mod k) lies in the set."""
        if any(n % k == c for n in self.present):
            return YES
        if not self.certified:
            return UNKNOWN
        span = lcm(self.period, k)
        hit = any(self.member(n) for n in range(self.preperiod, self.preperiod + span)
                  if n % k == c)
        return YES if hit else NO

    def to_dict(self, size: int = 10) -> dict:
        return {
            "u": format_word(self.u, size), "v": format_word(self.v, size),
            "horizon": self.horizon, "present": sorted(self.present),
            "preperiod": self.preperiod, "period": self.period,
            "tail_residues": sorted(self.tail), "cofinite": self.cofinite,
            "thickest_interval": self.thickest_interval, "level": self.level,
        }


def longest_run(values) -> int:
    best = run = 0
    prev = None
    for n in sorted(values):
        run = run + 1 if prev is not None and n == prev + 1 else 1
        best = max(best, run)
        prev = n
    return best


def merged_overlap(u: Word, v: Word, n: int) -> Word | None:
    """u with v written from position n (0 <= n < |u|), or None on a clash."""
    for i in range(n, len(u)):
        j = i - n
        if j >= len(v):
            break
        if u[i] != v[j]:
            return None
    return u + v[len(u) - n:] if n + len(v) > len(u) else u


def meets_all_residues(fwd: ReturnSetReport, back: ReturnSetReport, k: int) -> str:
    """Whether the two-sided set N = fwd u (-back) meets every class mod k.

    Shifting v by j coordinates shifts N by j, so over all shifted
    cylinders (X, T^k) is transitive exactly when N meets every class.
    """
    out = []
    for c in range(k):
        a, b = fwd.hits_residue(c, k), back.hits_residue((-c) % k, k)
        out.append(YES if YES in (a, b) else (NO if a == b == NO else UNKNOWN))
    return combine(out)


def meets_all_moduli(fwd: ReturnSetReport, back: ReturnSetReport) -> str:
    """meets_all_residues for every k at once.

    With both tails certified and P = lcm of the periods, this holds
    iff the forward tail residues and the negated backward ones cover
    Z/P: a class mod P missed by both tails holds only finitely many
    elements of N, so a large multiple of P exposes it.
    """
    if YES in (fwd.cofinite, back.cofinite):
        return YES
    if not (fwd.certified and back.certified):
        return UNKNOWN
    P = lcm(fwd.period, back.period)
    covered = ({r for r in range(P) if r % fwd.period in fwd.tail}
               | {(-r) % P for r in range(P) if r % back.period in back.tail})
    return YES if len(covered) == P else NO


def _report(A: LabeledGraph, u: Word, v: Word, H: int, orb: Orbit, T: int) -> ReturnSetReport:
    present = set()
    for n in range(min(len(u), H + 1)):
        w = merged_overlap(u, v, n)
        if w is not None and A.contains(w):
            present.add(n)
    for j, mask in enumerate(orb.masks):
        n = len(u) + j
        if n > H:
            break
        if mask & T:
            present.add(n)
    rep = ReturnSetReport(u, v, H, frozenset(), level=A.level)
    if orb.period is not None:
        pre = len(u) + orb.cycle_start
        per = orb.period
        tail = {(len(u) + j) % per for j in range(orb.cycle_start, orb.cycle_start + per)
                if orb.masks[j] & T}
        for n in range(len(u) + len(orb.masks), H + 1):
            if n % per in tail:
                present.add(n)
        rep.preperiod, rep.period, rep.tail = pre, per, frozenset(tail)
        rep.cofinite = YES if len(tail) == per else NO
    rep.present = frozenset(present)
    rep.thickest_interval = longest_run(present)
    if not A.exact and rep.cofinite == NO:
        # a truncation only sees part of the return set
        rep.cofinite = UNKNOWN
    return rep


def return_set(A: LabeledGraph, u: Sequence[int], v: Sequence[int], H: int) -> ReturnSetReport:
    """N([u]_0, [v]_0) restricted to [0, H], plus its certified tail."""
    u, v = tuple(u), tuple(v)
    if not u or not v:
        raise ValueError("cylinder words must be non-empty")
    if not A.contains(u):
        raise NotInLanguage(f"u={u} is not in the language")
    if not A.contains(v):
        raise NotInLanguage(f"v={v} is not in the language")
    if H < len(u) + len(v):
        raise ValueError(f"horizon {H} shorter than |u|+|v|={len(u) + len(v)}")
    orb = orbit(A, A.ends(u), H - len(u))
    return _report(A, u, v, H, orb, A.starts(v))


@dataclass
class DynamicsVerdict:
    transitive: str
    totally_transitive: str
    tt_by_k: dict[int, str]
    weak_mixing: str
    mixing: str
    word_length: int
    horizon: int
    k_max: int
    level: int | None
    certificates: dict[tuple[Word, Word], ReturnSetReport] = field(repr=False)
    # first failing / undecided pair per property, for diagnostics
    witnesses: dict[str, tuple[Word, Word]] = field(default_factory=dict)

    def verdicts(self) -> dict[str, str]:
        return {"transitive": self.transitive, "totally_transitive": self.totally_transitive,
                "weak_mixing": self.weak_mixing, "mixing": self.mixing}

    def is_monotone(self) -> bool:
        chain = [self.mixing, self.weak_mixing, self.totally_transitive, self.transitive]
        return all(a != YES or b == YES for a, b in zip(chain, chain[1:]))

    def to_dict(self, size: int = 10, with_certificates: bool = False) -> dict:
        out = dict(self.verdicts())
        out.update({
            "tt_by_k": {str(k): v for k, v in self.tt_by_k.items()},
            "word_length": self.word_length, "horizon": self.horizon,
            "k_max": self.k_max, "level": self.level,
            "witnesses": {p: [format_word(a, size), format_word(b, size)]
                          for p, (a, b) in self.witnesses.items()},
        })
        if with_certificates:
            out["certificates"] = [r.to_dict(size) for r in self.certificates.values()]
        return out


def classify(A: LabeledGraph, length: int, H: int, k_max: int = 4) -> DynamicsVerdict:
    """Quantify transitivity and mixing over all pairs of length-`length` cylinders.

    Cylinders at every offset count: transitivity, thickness and
    cofiniteness do not see the offset, but total transitivity does,
    so it asks the two-sided return set to meet every class mod k.
    Certified pairs give exact answers for the presented shift; pairs
    whose orbit does not close within H give "unknown".  On truncations
    of countable generators a "no" is downgraded to "unknown", since
    more generator words can only add return times.
    """
    if length < 1 or k_max < 1:
        raise ValueError("length and k_max must be positive")
    if H < 2 * length:
        raise ValueError(f"horizon {H} shorter than twice the word length")
    words = sorted(language(A, length)[length])
    ends = {u: orbit(A, A.ends(u), H - len(u)) for u in words}
    starts = {v: A.starts(v) for v in words}
    reports = {(u, v): _report(A, u, v, H, ends[u], starts[v]) for u in words for v in words}

    props: dict[str, dict] = {"transitive": {}, "tt": {}, "weak": {}, "mixing": {}}
    tt_k: dict[int, dict] = {k: {} for k in range(1, k_max + 1)}
    for (u, v), fwd in reports.items():
        back = reports[(v, u)]
        pair = (u, v)

        def either(f):
            a, b = f(fwd), f(back)
            return YES if YES in (a, b) else (NO if a == b == NO else UNKNOWN)

        props["transitive"][pair] = either(lambda r: r.meets_multiples(1))
        props["tt"][pair] = meets_all_moduli(fwd, back)
        props["weak"][pair] = either(lambda r: r.thick())
        props["mixing"][pair] = (YES if fwd.cofinite == back.cofinite == YES else
                                 NO if NO in (fwd.cofinite, back.cofinite) else UNKNOWN)
        for k in tt_k:
            tt_k[k][pair] = meets_all_residues(fwd, back, k)

    def settle(table):
        verdict = combine(table.values())
        if not A.exact and verdict == NO:
            verdict = UNKNOWN
        return verdict

    witnesses = {}
    for name, table in props.items():
        for pair, val in table.items():
            if val != YES:
                witnesses[name] = pair
                break
    verdict = DynamicsVerdict(
        transitive=settle(props["transitive"]),
        totally_transitive=settle(props["tt"]),
        tt_by_k={k: settle(t) for k, t in tt_k.items()},
        weak_mixing=settle(props["weak"]),
        mixing=settle(props["mixing"]),
        word_length=length, horizon=H, k_max=k_max, level=A.level,
        certificates=reports, witnesses=witnesses,
    )
    assert verdict.is_monotone(), verdict.verdicts()
    return verdict
