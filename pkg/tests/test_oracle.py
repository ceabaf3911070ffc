import pytest

from conftest import NONCOVER_SETS, graph_corpus, zero_based
from wildenum import oracle
from wildenum.graph import complete_graph, cycle_graph, empty_graph, path_graph
from wildenum.horn import SetFamily, enumerate_noncovers
from wildenum.rows import RowFamily, WildcardRow, parse_row


def test_connected_on_edgeless_graph():
    got = oracle.oracle_subsets(empty_graph(4), "connected")
    assert got == [frozenset()] + [frozenset([v]) for v in range(4)]


def test_graphs_without_long_cycles_are_chordal():
    assert len(oracle.oracle_subsets(complete_graph(5), "chordal")) == 32
    assert len(oracle.oracle_subsets(path_graph(6), "chordal")) == 64


def test_forest_oracle_on_g3_matches_cycle_noncovers(g3):
    from conftest import G3_CYCLES

    cycles = [frozenset(g3.index[v] for v in c) for c in G3_CYCLES]
    expected = sorted(
        (x for x in map(frozenset, _powerset(9)) if not any(c <= x for c in cycles)),
        key=oracle.subset_key,
    )
    assert oracle.oracle_subsets(g3, "forest") == expected


def _powerset(n):
    return [{i for i in range(n) if m >> i & 1} for m in range(1 << n)]


def test_partition_oracle_examples():
    assert len(oracle.oracle_partitions(complete_graph(4), "clipac")) == 15
    assert len(oracle.oracle_partitions(cycle_graph(4), "connpac")) == 12
    assert len(oracle.oracle_partitions(empty_graph(4), "connpac")) == 1
    assert sum(1 for _ in oracle.set_partitions(list(range(6)))) == 203


def test_size_guards():
    with pytest.raises(oracle.OracleSizeError):
        oracle.oracle_subsets(empty_graph(21), "forest")
    with pytest.raises(oracle.OracleSizeError):
        oracle.oracle_partitions(empty_graph(11), "connpac")
    with pytest.raises(ValueError):
        oracle.oracle_subsets(empty_graph(2), "clipac")


def test_compare_family():
    fam = enumerate_noncovers(SetFamily(9, zero_based(NONCOVER_SETS)))
    ref = [x for x in map(frozenset, _powerset(9)) if not any(s <= x for s in zero_based(NONCOVER_SETS))]
    cmp = oracle.compare_family(fam, ref)
    assert cmp.equal and len(ref) == 431 and cmp.witness is None

    broken = RowFamily(9, fam.rows[:-1] + (parse_row("1 1 n1 1 0 n1 2 2 1"),))
    cmp = oracle.compare_family(broken, ref)
    assert not cmp.equal and cmp.witness is not None
    assert "unexpected" in cmp.report()

    assert oracle.compare_family(RowFamily(3, ()), []).equal


def test_compare_family_flags_overlap():
    fam = RowFamily(2, (WildcardRow.full(2), parse_row("1 2")))
    cmp = oracle.compare_family(fam, [frozenset(), {0}, {1}, {0, 1}])
    assert not cmp.equal and cmp.duplicates == 2


def test_all_cycles_counts():
    assert len(oracle.all_cycles(complete_graph(4))) == 7  # 4 triangles, 3 squares
    assert len(oracle.all_cycles(path_graph(5))) == 0


@pytest.mark.parametrize("g", graph_corpus(100, seed=3), ids=lambda g: f"n{g.n}m{g.m}")
def test_predicates_are_consistent(g):
    sets = {p: set(oracle.oracle_subsets(g, p)) for p in ("forest", "chordal", "bipartite", "trianglefree")}
    assert sets["forest"] <= sets["chordal"] & sets["bipartite"]
    assert sets["trianglefree"] & sets["chordal"] == sets["forest"]
    assert sets["bipartite"] <= sets["trianglefree"]
