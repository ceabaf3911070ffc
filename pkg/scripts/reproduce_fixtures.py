"""Print the fixture numbers the test suite pins, computed from scratch."""

import argparse
import itertools
from pathlib import Path

from wildenum.families import Forbidden, enumerate_cycle_restricted
from wildenum.graph import all_chordless_cycles, complete_graph, parse_graph, path_graph
from wildenum.horn import (
    Closure,
    HornClause,
    HornCNF,
    SetFamily,
    enumerate_horn_models,
    enumerate_noncovers,
    lookahead_sons,
    parse_horn,
)
from wildenum.packings import enumerate_clipacs, enumerate_connpacs
from wildenum.rows import WildcardRow, family_cardinality, format_family, parse_row, row_cardinality

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
TRIANGLES = "rst rsu rtu rtx rux rxy stu tuv tuw tux tvw twx uvw uwx".split()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", action="store_true", help="also print the row families")
    args = ap.parse_args()

    cnf = parse_horn((FIXTURES / "eq1.horn").read_text())
    sets = [c.negatives for c in cnf.clauses]
    fam = enumerate_noncovers(SetFamily(9, sets))
    print("noncovers of four sets over 9 positions:", family_cardinality(fam))
    if args.rows:
        print(format_family(fam), end="")
    print("same set as Horn models:", family_cardinality(enumerate_horn_models(cnf).family))

    r = parse_row("n1 n1 n2 n2 n2 0 2 2 2")
    sons = Closure(frozenset([1, 2]), frozenset([6, 8])).impose(r)
    print(f"implication split of a {row_cardinality(r)}-member row:", [row_cardinality(s) for s in sons])

    g3 = parse_graph((FIXTURES / "g3.graph").read_text())
    cycles = [sorted(g3.labels[v] for v in c.vertices) for c in all_chordless_cycles(g3)]
    print("chordless cycles of g3:", cycles)
    chordal = enumerate_cycle_restricted(g3, Forbidden.LONG)
    print("chordal vertex sets of g3:", family_cardinality(chordal))
    if args.rows:
        print(format_family(chordal), end="")

    letters = "rstuvwxy"
    tri = [frozenset(letters.index(ch) for ch in t) for t in TRIANGLES]
    print("triangle-free sets over 8 vertices:", family_cardinality(enumerate_noncovers(SetFamily(8, tri))))

    def c(neg, pos=None):
        return HornClause(frozenset(x - 1 for x in neg), None if pos is None else pos - 1)

    f = HornCNF(7, (c([1], 2), c([2, 3, 6]), c([4, 7], 3), c([5], 1)))
    row = WildcardRow(7, zeros=frozenset([4]), ones=frozenset([5, 6]))
    good = [sorted(p + 1 for p in s.ones - row.ones) for s in lookahead_sons(f, row, 2)]
    total = len(list(itertools.combinations(range(4), 2)))
    print(f"look-ahead pairs that stay satisfiable: {good} ({len(good)} of {total})")

    print("connected packings of paths n=3..10:",
          [family_cardinality(enumerate_connpacs(path_graph(n))) for n in range(3, 11)])
    print("clique packings of K3..K6:",
          [family_cardinality(enumerate_clipacs(complete_graph(n))) for n in range(3, 7)])


if __name__ == "__main__":
    main()
