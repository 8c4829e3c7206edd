"""Window SFTs of the line cover against the cover itself.

The finite windows are bipartite graphs, so every one of them fails
total transitivity at k=2, while the return sets of the cover fill in
as the window grows.
"""
import argparse

from codedshift.automaton import NotInLanguage
from codedshift.cover import LineCoverSystem, cover_return_set, get_provider, sft_window
from codedshift.dynamics import classify
from codedshift.words import parse_word


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--provider", default="thue-morse")
    ap.add_argument("--radii", type=int, nargs="+", default=[1, 2, 4, 8, 16])
    ap.add_argument("--horizon", type=int, default=24)
    ap.add_argument("--pairs", nargs="+", default=["02:02", "0:2", "01:13", "0:0"])
    args = ap.parse_args(argv)

    print("radius  transitive  tt(k=2)  mixing")
    base = LineCoverSystem(get_provider(args.provider), max(args.radii))
    for B in args.radii:
        v = classify(sft_window(base, B).graph, 1, 2 * B + 32, 2)
        print(f"{B:6d}  {v.transitive:10s}  {v.tt_by_k[2]:7s}  {v.mixing}")

    print(f"\nthickest interval of cover return sets at horizon {args.horizon}")
    for pair in args.pairs:
        u, v = (parse_word(t, 4) for t in pair.split(":"))
        row = []
        for B in args.radii:
            try:
                rep = cover_return_set(LineCoverSystem(get_provider(args.provider), B), u, v,
                                       args.horizon)
                row.append(str(rep.thickest_interval))
            except NotInLanguage:
                row.append("-")  # not yet realized in this window
        print(f"  {pair:8s} {' '.join(f'{c:>3s}' for c in row)}")


if __name__ == "__main__":
    main()
