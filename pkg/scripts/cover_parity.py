"""Periods of the line cover: every periodic label word has even least period.

Also prints the smallest loop words x(u) whose powers occur in the
driving sequence, which is how aperiodicity of x shows up.
"""
import argparse
from collections import Counter

from codedshift.cover import LineCoverSystem, closed_walks, cover_periodic, get_provider, sequence_window
from codedshift.words import format_word, least_period


def max_power(x, c):
    r = 0
    while c * (r + 1) in x:
        r += 1
    return r


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--providers", nargs="+", default=["thue-morse", "fibonacci", "chacon"])
    ap.add_argument("--window", type=int, default=64)
    ap.add_argument("--period", type=int, default=12)
    ap.add_argument("--k", type=int, default=1, help="subsampling stride")
    args = ap.parse_args(argv)

    for name in args.providers:
        S = LineCoverSystem(get_provider(name, args.k), args.window)
        found = cover_periodic(S, args.period)
        by_period = Counter(p for _, p in found)
        x = format_word(sequence_window(S.provider, args.window))
        loops = {format_word(t.x_of_u) for t in closed_walks(S, args.period)
                 if t.x_of_u and least_period(t.label) == len(t.label)}
        worst = max((max_power(x, c), c) for c in loops)
        print(f"{name} (k={args.k}, window {args.window})")
        print(f"  periodic words by least period: {dict(sorted(by_period.items()))}")
        print(f"  odd periods: {sum(n for p, n in by_period.items() if p % 2)}")
        print(f"  highest power of a loop word x(u) in the window: {worst[1]}^{worst[0]}")


if __name__ == "__main__":
    main()
