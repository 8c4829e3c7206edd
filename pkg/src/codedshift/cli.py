"""Command line front end: system files in, reports out.

Exit status is 0 for a definite answer, 2 when the answer contains an
"unknown" verdict, and 1 on any error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import cover as cv
from .automaton import FlowerAutomaton, build_flower, language, periodic_points
from .dynamics import UNKNOWN, classify, return_set
from .generators import (GeneratorFamily, GeneratorSet, bezout_augment, by_length_family,
                         frobenius_bound, gcd_lengths, levels_family, power_family, represent)
from .property_p import build_witness, witness_failures
from .syncsys import (ClosureViolation, HalfSyncSpec, build_half_sync, follower_set,
                      is_synchronizing, synchronized_generator, verify_half_sync)
from .words import Alphabet, WordError, format_word, parse_word

log = logging.getLogger("codedshift")

DEFAULTS = {"horizon": 64, "length": 3, "level": 6, "k_max": 4}
KINDS = ("generators", "family", "half_sync", "cover")


class SpecError(ValueError):
    def __init__(self, message: str, where: str | None = None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


@dataclass
class SystemSpec:
    alphabet: int
    kind: str
    payload: Any
    defaults: dict = field(default_factory=lambda: dict(DEFAULTS))

    # -- builders --------------------------------------------------------------

    def word(self, text) -> tuple[int, ...]:
        return parse_word(text, self.alphabet)

    @property
    def level(self) -> int | None:
        if self.kind in ("family", "half_sync"):
            return self.payload.get("level", self.defaults["level"])
        return None

    def family(self) -> GeneratorFamily:
        p = self.payload
        if self.kind == "half_sync":
            return build_half_sync(self.half_sync_spec(), self.level)
        kind = p["kind"]
        if kind == "power":
            return power_family(self.alphabet, self.word(p["u"]), self.word(p["v"]))
        if kind == "levels":
            return levels_family(self.alphabet, [[self.word(w) for w in lv] for lv in p["levels"]])
        if kind == "by_length":
            return by_length_family(self.alphabet, [self.word(w) for w in p["words"]])
        raise SpecError(f"unknown family kind {kind!r}", "family.kind")

    def half_sync_spec(self) -> HalfSyncSpec:
        U = dict(self.payload["U"])
        kind = U.pop("kind")
        if kind == "power":
            U["word"] = self.word(U.get("word", ""))
        elif kind == "list":
            U["words"] = [self.word(w) for w in U.get("words", [])]
        return HalfSyncSpec(self.alphabet, self.word(self.payload["m"]), kind, U)

    def generator_set(self, level: int | None = None) -> GeneratorSet:
        if self.kind == "generators":
            return GeneratorSet.from_strings(self.alphabet, self.payload)
        if self.kind in ("family", "half_sync"):
            return self.family().truncate(self.level if level is None else level)
        raise SpecError("a cover system has no finite generator set", "cover")

    def automaton(self, level: int | None = None) -> FlowerAutomaton:
        if self.kind == "generators":
            return build_flower(self.generator_set())
        lv = self.level if level is None else level
        return build_flower(self.family(), lv)

    def cover(self, window: int | None = None) -> cv.LineCoverSystem:
        if self.kind != "cover":
            raise SpecError("command needs a cover system", "cover")
        p = self.payload
        k = p.get("k", 1)
        if "substitution" in p:
            prov = cv.SequenceProvider.from_json(p["substitution"], k_power=k)
        else:
            prov = cv.get_provider(p.get("provider", "thue-morse"), k)
        return cv.LineCoverSystem(prov, window or p.get("window", 64))

    def to_json(self) -> dict:
        out = {"alphabet": self.alphabet, self.kind: self.payload}
        if self.defaults != DEFAULTS:
            out["defaults"] = self.defaults
        return out


def render_spec(spec: SystemSpec) -> str:
    return json.dumps(spec.to_json(), indent=2, sort_keys=True)


def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None


def parse_spec(path_or_text, source: str | None = None) -> SystemSpec:
    """Read and validate a system file.  Errors carry a line or field path."""
    if isinstance(path_or_text, Path) or (isinstance(path_or_text, str)
                                          and not path_or_text.lstrip().startswith("{")):
        path = Path(path_or_text)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise SpecError(str(exc), str(path)) from None
        source = source or str(path)
    else:
        text = path_or_text
        source = source or "<system>"
    data = _load_json(text, source)
    return spec_from_dict(data)


def spec_from_dict(data: dict) -> SystemSpec:
    if not isinstance(data, dict):
        raise SpecError("top level must be an object")
    if "alphabet" not in data:
        raise SpecError("missing field", "alphabet")
    size = data["alphabet"]
    if not isinstance(size, int):
        raise SpecError("must be an integer", "alphabet")
    try:
        Alphabet(size)
    except WordError as exc:
        raise SpecError(str(exc), "alphabet") from None
    present = [k for k in KINDS if k in data]
    if len(present) != 1:
        raise SpecError(f"exactly one of {KINDS} is required, found {present or 'none'}")
    kind = present[0]
    defaults = dict(DEFAULTS)
    for key, val in data.get("defaults", {}).items():
        if key not in DEFAULTS:
            raise SpecError("unknown default", f"defaults.{key}")
        defaults[key] = val
    payload = data[kind]
    spec = SystemSpec(size, kind, payload, defaults)
    _validate(spec)
    return spec


def _validate(spec: SystemSpec):
    p = spec.payload
    if spec.kind == "generators":
        if not isinstance(p, list) or not p:
            raise SpecError("must be a non-empty list of words", "generators")
        for i, w in enumerate(p):
            try:
                if not spec.word(w):
                    raise WordError("empty generator word")
            except WordError as exc:
                raise SpecError(str(exc), f"generators[{i}]") from None
        return
    if spec.kind == "cover":
        if not isinstance(p, dict):
            raise SpecError("must be an object", "cover")
        if spec.alphabet != cv.SIZE:
            raise SpecError("cover systems use alphabet 4", "alphabet")
        try:
            spec.cover()
        except (WordError, ValueError) as exc:
            raise SpecError(str(exc), "cover") from None
        return
    if not isinstance(p, dict):
        raise SpecError("must be an object", spec.kind)
    if spec.kind == "family" and "kind" not in p:
        raise SpecError("missing field", "family.kind")
    if spec.kind == "half_sync":
        for key in ("m", "U"):
            if key not in p:
                raise SpecError("missing field", f"half_sync.{key}")
        if "kind" not in p["U"]:
            raise SpecError("missing field", "half_sync.U.kind")
    try:
        spec.generator_set()
    except ClosureViolation as exc:
        raise SpecError(str(exc), f"{spec.kind}.U") from None
    except (WordError, KeyError, TypeError, ValueError) as exc:
        raise SpecError(str(exc), spec.kind) from None


# -- reports -------------------------------------------------------------------

@dataclass
class Report:
    command: str
    data: dict
    provenance: dict
    status: int = 0

    def to_dict(self) -> dict:
        return {"command": self.command, "data": self.data,
                "provenance": self.provenance, "status": self.status}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"# {self.command}"]
        _flatten(self.data, "", lines)
        lines.append("# provenance")
        _flatten(self.provenance, "", lines)
        lines.append(f"# status {self.status}")
        return "\n".join(lines)


def _flatten(obj, prefix, lines):
    if isinstance(obj, dict):
        for key in sorted(obj):
            _flatten(obj[key], f"{prefix}{key}.", lines)
        return
    key = prefix[:-1]
    if isinstance(obj, list) and obj and isinstance(obj[0], dict):
        for i, item in enumerate(obj):
            _flatten(item, f"{key}[{i}].", lines)
        return
    lines.append(f"{key}: {json.dumps(obj)}")


def _status(*verdicts) -> int:
    return 2 if UNKNOWN in verdicts else 0


def run(command: str, spec: SystemSpec | None, flags: argparse.Namespace) -> Report:
    fw = (lambda w: format_word(w, spec.alphabet)) if spec else format_word
    prov = {"seed": flags.seed}
    if spec is not None:
        prov.update({"system": spec.kind, "level": spec.level})

    def need_spec():
        if spec is None:
            raise SpecError(f"command {command!r} needs a system file")

    if command == "frobenius":
        a1, a2 = flags.a1, flags.a2
        r = represent(flags.n, a1, a2) if flags.n is not None else None
        data = {"a1": a1, "a2": a2, "bound": frobenius_bound(a1, a2)}
        if flags.n is not None:
            data["n"] = flags.n
            data["representation"] = list(r) if r else None
        return Report(command, data, prov)

    need_spec()
    if command == "gcd":
        W = spec.generator_set()
        return Report(command, {"generators": W.strings(), "gcd": gcd_lengths(W)}, prov)

    if command == "augment":
        aug = bezout_augment(spec.generator_set())
        return Report(command, {
            "added": [fw(w) for w in aug.added],
            "coefficients": list(aug.coefficients),
            "coprime_pair_lengths": list(aug.coprime_pair_lengths),
            "augmented": aug.augmented.strings()}, prov)

    if command.startswith("cover-") or command == "sft-window":
        S = spec.cover(flags.window)
        prov.update({"provider": S.provider.name, "k_power": S.provider.k_power, "window": S.B})
        if command == "cover-lang":
            words = sorted(cv.cover_language(S, flags.len))
            return Report(command, {"length": flags.len, "count": len(words),
                                    "words": [fw(w) for w in words]}, prov)
        if command == "cover-periodic":
            found = cv.cover_periodic(S, flags.period)
            odd = [fw(w) for w, p in found if p % 2]
            return Report(command, {"period_bound": flags.period, "count": len(found),
                                    "odd_periods": odd,
                                    "words": [[fw(w), p] for w, p in found]}, prov)
        if command == "cover-return":
            rep = cv.cover_return_set(S, spec.word(flags.u), spec.word(flags.v), flags.horizon)
            return Report(command, rep.to_dict(spec.alphabet), prov, _status(rep.cofinite))
        sft = cv.sft_window(S, flags.sft_radius)
        verdict = classify(sft.graph, flags.len, flags.horizon, flags.kmax)
        prov.update({"sft_radius": sft.B})
        return Report(command, verdict.to_dict(64), prov, _status(*verdict.verdicts().values()))

    A = spec.automaton()
    if command == "lang":
        table = language(A, flags.len)
        data = {"counts": table.counts(),
                "words": {str(n): sorted(fw(w) for w in table[n])
                          for n in range(1, flags.len + 1)}}
        return Report(command, data, prov)
    if command == "member":
        w = spec.word(flags.word)
        return Report(command, {"word": fw(w), "member": A.contains(w)}, prov)
    if command == "periodic":
        pts = sorted(periodic_points(A, flags.period), key=lambda w: (len(w), w))
        return Report(command, {"period_bound": flags.period, "words": [fw(w) for w in pts]}, prov)
    if command == "return-set":
        rep = return_set(A, spec.word(flags.u), spec.word(flags.v), flags.horizon)
        return Report(command, rep.to_dict(spec.alphabet), prov, _status(rep.cofinite))
    if command == "classify":
        verdict = classify(A, flags.len, flags.horizon, flags.kmax)
        return Report(command, verdict.to_dict(spec.alphabet), prov,
                      _status(*verdict.verdicts().values()))
    if command == "property-p":
        words = [spec.word(w) for w in flags.words.split(",")]
        wit = build_witness(A, words)
        if flags.samples is not None and flags.seed is None:
            raise SpecError("--samples needs --seed")
        failures = witness_failures(A, wit, flags.k, flags.samples, flags.seed)
        data = wit.to_dict(spec.alphabet)
        data.update({"k": flags.k, "checked": "sample" if flags.samples else "all",
                     "verified": not failures, "failures": failures[:10]})
        return Report(command, data, prov, 0 if not failures else 1)
    if command == "sync-word":
        res = is_synchronizing(A, spec.word(flags.word), flags.bound)
        return Report(command, {"word": flags.word, **res.to_dict(spec.alphabet)}, prov,
                      _status(res.verdict))
    if command == "sync-gen":
        W = synchronized_generator(A, spec.word(flags.alpha), flags.bound)
        return Report(command, {"alpha": flags.alpha, "bound": flags.bound,
                                "generators": W.strings(), "gcd": gcd_lengths(W)}, prov)
    if command == "half-sync-verify":
        m = spec.word(flags.m)
        chk = verify_half_sync(A, m, flags.depth)
        data = {"m": fw(m), "depth": flags.depth, "verdict": chk.verdict,
                "classes_checked": chk.classes_checked,
                "follower_count": len(follower_set(A, m, flags.depth).extensions)}
        if chk.context is not None:
            data["context"] = fw(chk.context)
            data["missing_follower"] = fw(chk.gap) if chk.gap else None
        return Report(command, data, prov)
    raise SpecError(f"unknown command {command!r}")


COMMANDS = ["lang", "member", "periodic", "return-set", "classify", "gcd", "augment",
            "frobenius", "property-p", "sync-word", "sync-gen", "half-sync-verify",
            "cover-lang", "cover-periodic", "cover-return", "sft-window"]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="codedshift", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="emit the report as JSON")
    ap.add_argument("--seed", type=int, default=None, help="seed for any sampling")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, spec_required=True, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("spec", nargs=None if spec_required else "?", help="system JSON file")
        return p

    cmd("lang").add_argument("--len", type=int, default=None)
    cmd("member").add_argument("--word", required=True)
    cmd("periodic").add_argument("--period", type=int, default=6)
    for name in ("return-set", "cover-return"):
        p = cmd(name)
        p.add_argument("--u", required=True)
        p.add_argument("--v", required=True)
        p.add_argument("--horizon", type=int, default=None)
        if name == "cover-return":
            p.add_argument("--window", type=int, default=None)
    p = cmd("classify")
    p.add_argument("--len", type=int, default=None)
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--kmax", type=int, default=None)
    cmd("gcd")
    cmd("augment")
    p = cmd("frobenius", spec_required=False)
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--a2", type=int, required=True)
    p.add_argument("--n", type=int, default=None, help="also represent this n")
    p = cmd("property-p")
    p.add_argument("--words", required=True, help="comma separated cylinder words")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--samples", type=int, default=None)
    p = cmd("sync-word")
    p.add_argument("--word", required=True)
    p.add_argument("--bound", type=int, default=3)
    p = cmd("sync-gen")
    p.add_argument("--alpha", required=True)
    p.add_argument("--bound", type=int, default=8)
    p = cmd("half-sync-verify")
    p.add_argument("--m", required=True)
    p.add_argument("--depth", type=int, default=3)
    p = cmd("cover-lang")
    p.add_argument("--len", type=int, default=4)
    p.add_argument("--window", type=int, default=None)
    p = cmd("cover-periodic")
    p.add_argument("--period", type=int, default=8)
    p.add_argument("--window", type=int, default=None)
    p = cmd("sft-window")
    p.add_argument("--window", type=int, default=None, help="cover window used for x")
    p.add_argument("--radius", dest="sft_radius", type=int, default=4)
    p.add_argument("--len", type=int, default=1)
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--kmax", type=int, default=2)
    return ap


def _fill_defaults(args, spec: SystemSpec | None):
    d = spec.defaults if spec else DEFAULTS
    for name, key in (("len", "length"), ("horizon", "horizon"), ("kmax", "k_max")):
        if getattr(args, name, 0) is None:
            setattr(args, name, d[key])


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("COD_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        spec = parse_spec(args.spec) if getattr(args, "spec", None) else None
        _fill_defaults(args, spec)
        log.info("running %s on %s", args.command, args.spec)
        report = run(args.command, spec, args)
    except (ValueError, KeyError) as exc:
        msg = str(exc)
        if args.json:
            print(json.dumps({"command": args.command, "error": msg, "status": 1}))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return 1
    print(report.to_json() if args.json else report.to_text())
    return report.status


if __name__ == "__main__":
    sys.exit(main())
