"""Rows emitted versus members denoted, over random graphs of growing size."""

import argparse
import random
import time

from wildenum.families import FamilyKind, enumerate_family
from wildenum.graph import Graph
from wildenum.packings import enumerate_clipacs, enumerate_connpacs
from wildenum.rows import family_cardinality


def random_graph(rng, n, p):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(list(range(n)), edges)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("family", help="family token, or clique / connected for packings")
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 12, 16, 20])
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'n':>4} {'m':>4} {'rows':>8} {'members':>14} {'ratio':>10} {'secs':>7}")
    for n in args.sizes:
        for _ in range(args.trials):
            g = random_graph(rng, n, args.density)
            t0 = time.perf_counter()
            if args.family == "clique":
                fam = enumerate_clipacs(g)
            elif args.family == "connected":
                fam = enumerate_connpacs(g)
            else:
                fam = enumerate_family(g, FamilyKind(args.family))
            secs = time.perf_counter() - t0
            total = family_cardinality(fam)
            ratio = total / max(1, len(fam))
            print(f"{n:>4} {g.m:>4} {len(fam):>8} {total:>14} {ratio:>10.1f} {secs:>7.2f}")


if __name__ == "__main__":
    main()
