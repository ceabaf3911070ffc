import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import NONCOVER_SETS, members, zero_based
from wildenum.horn import (
    Cap,
    Closure,
    ExistentialClause,
    HornClause,
    HornCNF,
    HornParseError,
    Implication,
    LookaheadStats,
    SetFamily,
    enumerate_capped,
    enumerate_closed,
    enumerate_horn_models,
    enumerate_min_ones,
    enumerate_noncovers,
    enumerate_with_existential,
    format_horn,
    horn_satisfiable,
    lookahead_sons,
    minimal_model,
    parse_horn,
    run,
)
from wildenum.rows import (
    WildcardRow,
    family_cardinality,
    family_pairwise_disjoint,
    parse_row,
    row_cardinality,
    row_contains,
    row_expand,
    set_of,
)


def powerset(width):
    return [frozenset(p for p in range(width) if m >> p & 1) for m in range(1 << width)]


def clause(neg, pos=None):
    """Clause from 1-based literals."""
    return HornClause(frozenset(x - 1 for x in neg), None if pos is None else pos - 1)


# -- noncovers ------------------------------------------------------------------


def test_four_sets_give_431_noncovers():
    fam = enumerate_noncovers(SetFamily(9, zero_based(NONCOVER_SETS)))
    assert family_cardinality(fam) == 431
    assert family_pairwise_disjoint(fam)
    expected = {x for x in powerset(9) if not any(s <= x for s in zero_based(NONCOVER_SETS))}
    assert members(fam) == expected


def test_noncover_row_shapes_follow_the_stack_order():
    fam = enumerate_noncovers(SetFamily(9, zero_based(NONCOVER_SETS)))
    assert [row_cardinality(r) for r in fam.rows] == [256, 96, 54, 16, 9]
    # the row with vertex 2 absent is the whole powerset of the other eight
    assert str(fam.rows[0]) == "2 0 2 2 2 2 2 2 2"


def test_noncover_trivial_cases():
    assert family_cardinality(enumerate_noncovers(SetFamily(6, ()))) == 64
    assert family_cardinality(enumerate_noncovers(SetFamily(3, (frozenset([0]),)))) == 4
    assert len(enumerate_noncovers(SetFamily(3, (frozenset(),)))) == 0


# -- implications ---------------------------------------------------------------


def test_implication_split_of_a_168_member_row():
    r = parse_row("n1 n1 n2 n2 n2 0 2 2 2")
    assert row_cardinality(r) == 168
    imp = Closure(frozenset([1, 2]), frozenset([6, 8]))
    sons = imp.impose(r)
    assert [row_cardinality(s) for s in sons] == [112, 32, 6]
    expected = {x for x in row_expand(r) if not (x[1] and x[2]) or (x[6] and x[8])}
    got = [set(row_expand(s)) for s in sons]
    assert set().union(*got) == expected and sum(map(len, got)) == 150


def test_closed_sets_small():
    assert family_cardinality(enumerate_closed([], 5)) == 32
    fam = enumerate_closed([Implication({0}, {1})], 2)
    assert members(fam) == {frozenset(), frozenset([1]), frozenset([0, 1])}


def test_trivial_implications_dropped():
    fam = enumerate_closed([Implication({0, 1}, {1})], 3)
    assert family_cardinality(fam) == 8


# -- Horn CNFs ------------------------------------------------------------------

F = HornCNF(7, (clause([1], 2), clause([2, 3, 6]), clause([4, 7], 3), clause([5], 1)))
R = WildcardRow(7, zeros=frozenset([4]), ones=frozenset([5, 6]))


def restricted(extra):
    units = tuple(HornClause(frozenset(), p) for p in extra)
    fixed = (clause([5]), clause([], 6), clause([], 7))
    return HornCNF(7, F.clauses + fixed + units)


def test_horn_models_of_the_noncover_cnf(tmp_path):
    text = "p horn 9 4\n-1 -2 -4 -5 0\n-1 -2 -4 -7 -8 -9 0\n-2 -5 -8 -9 0\n-2 -3 -6 -9 0\n"
    cnf = parse_horn(text)
    res = enumerate_horn_models(cnf)
    assert res.satisfiable and family_cardinality(res.family) == 431
    assert parse_horn(format_horn(cnf)) == cnf


def test_unsatisfiable_is_a_flag():
    cnf = HornCNF(1, (HornClause(frozenset(), 0), HornClause(frozenset([0]))))
    res = enumerate_horn_models(cnf)
    assert not res.satisfiable and len(res.family) == 0


def test_empty_cnf():
    assert horn_satisfiable(HornCNF(4))
    assert family_cardinality(enumerate_horn_models(HornCNF(4)).family) == 16


def test_unit_propagation_examples():
    # x1 = x3 = 1 forces x2, which clashes with (not x2 or not x3 or not x6) once x6 = 1
    assert not horn_satisfiable(restricted([0, 2]))
    assert minimal_model(HornCNF(3, (clause([], 1), clause([1], 3)))) == frozenset([0, 2])


def test_lookahead_pair_one_four_is_unsatisfiable():
    # x1 = x4 = 1 forces x2 and (with x7 = 1) x3, clashing with the x2-x3-x6 clause
    assert not horn_satisfiable(restricted([0, 3]))


def test_lookahead_good_pairs_match_brute_force():
    sons = lookahead_sons(F, R, 2)
    got = [sorted(s.ones - R.ones) for s in sons]
    brute = [
        sorted(pair)
        for pair in itertools.combinations(range(4), 2)
        if any(
            all(c.holds(x) for c in F.clauses) and set(pair) <= x
            for x in powerset(7)
            if R.ones <= x and not x & R.zeros
        )
    ]
    assert got == brute == [[0, 1], [2, 3]]


def test_min_ones_union_is_exact():
    stats = LookaheadStats()
    fam = enumerate_min_ones(F, 4, t=2, stats=stats)
    expected = {x for x in powerset(7) if len(x) >= 4 and all(c.holds(x) for c in F.clauses)}
    assert members(fam) == expected
    assert stats.examined > 0


def test_min_ones_degenerate():
    plain = enumerate_horn_models(F).family
    assert members(enumerate_min_ones(F, 0)) == members(plain)
    assert members(enumerate_min_ones(HornCNF(3), 3)) == {frozenset([0, 1, 2])}
    with pytest.raises(ValueError):
        enumerate_min_ones(F, 2, t=0)


def test_parse_horn_errors():
    with pytest.raises(HornParseError) as exc:
        parse_horn("p horn 3 1\n1 2 0\n")
    assert exc.value.lineno == 2
    with pytest.raises(HornParseError):
        parse_horn("-1 0\n")
    with pytest.raises(HornParseError):
        parse_horn("p horn 2 1\n-1 -5 0\n")
    with pytest.raises(HornParseError):
        parse_horn("p horn 2 2\n-1 0\n")


# -- caps and existential clauses ------------------------------------------------


def test_single_cap_of_two():
    fam = enumerate_capped(6, [(0, {1, 2, 3, 4}, 2)])
    assert family_cardinality(fam) == 54
    brute = [x for x in powerset(6) if 0 not in x or len(x & {1, 2, 3, 4}) <= 2]
    assert len(brute) == 54 and members(fam) == set(brute)


def test_no_caps():
    assert family_cardinality(enumerate_capped(5, [])) == 32


def test_existential_on_a_four_cycle():
    ex = ExistentialClause((0, 2), (frozenset([1]), frozenset([3])))
    fam = enumerate_with_existential(4, None, [ex])
    brute = [x for x in powerset(4) if not {0, 2} <= x or 1 in x or 3 in x]
    assert members(fam) == set(brute)
    assert family_cardinality(fam) == 15


def test_single_term_existential_is_an_implication():
    ex = ExistentialClause((0, 3), (frozenset([1, 2]),))
    a = members(enumerate_with_existential(5, None, [ex]))
    b = members(enumerate_closed([Implication({0, 3}, {1, 2})], 5))
    assert a == b


def test_existential_without_terms_forbids_the_guard():
    fam = enumerate_with_existential(3, None, [ExistentialClause((0, 1), ())])
    assert members(fam) == {x for x in powerset(3) if not {0, 1} <= x}


# -- property tests against brute force -------------------------------------------

def subsets(w, min_size=0):
    return st.frozensets(st.integers(0, w - 1), min_size=min_size, max_size=w)


@st.composite
def set_families(draw):
    w = draw(st.integers(1, 10))
    sets = draw(st.lists(subsets(w, 1), max_size=8))
    return SetFamily(w, tuple(sets))


@st.composite
def implication_lists(draw):
    w = draw(st.integers(1, 10))
    imps = draw(st.lists(st.builds(Implication, subsets(w), subsets(w)), max_size=8))
    return w, imps


@st.composite
def horn_cnfs(draw):
    w = draw(st.integers(1, 10))
    out = []
    for _ in range(draw(st.integers(0, 8))):
        neg = draw(subsets(w))
        pos = draw(st.one_of(st.none(), st.integers(0, w - 1)))
        if pos in neg:
            pos = None
        out.append(HornClause(neg, pos))
    return HornCNF(w, tuple(out))


@st.composite
def cap_lists(draw):
    w = draw(st.integers(2, 10))
    caps = []
    for _ in range(draw(st.integers(0, 5))):
        v = draw(st.integers(0, w - 1))
        body = draw(subsets(w)) - {v}
        caps.append(Cap(v, body, draw(st.integers(0, 2))))
    return w, caps


@st.composite
def existential_problems(draw):
    cnf = draw(horn_cnfs())
    w = cnf.width
    clauses = []
    if w >= 2:
        for _ in range(draw(st.integers(0, 4))):
            s, t = draw(st.lists(st.integers(0, w - 1), min_size=2, max_size=2, unique=True))
            terms = draw(st.lists(subsets(w).map(lambda x: x - {s, t}), max_size=3))
            clauses.append(ExistentialClause((s, t), tuple(terms)))
    return cnf, clauses


def check_family(fam, expected):
    assert family_pairwise_disjoint(fam)
    assert members(fam) == set(expected)
    assert family_cardinality(fam) == len(set(expected))


@settings(max_examples=150, deadline=None)
@given(set_families())
def test_noncovers_match_brute_force(fam):
    expected = [x for x in powerset(fam.width) if not any(s <= x for s in fam.sets)]
    check_family(enumerate_noncovers(fam), expected)


@settings(max_examples=150, deadline=None)
@given(implication_lists())
def test_closed_sets_match_brute_force(problem):
    w, imps = problem
    expected = [
        x for x in powerset(w) if all(not i.premise <= x or i.conclusion <= x for i in imps)
    ]
    check_family(enumerate_closed(imps, w), expected)


@settings(max_examples=150, deadline=None)
@given(horn_cnfs())
def test_horn_models_match_brute_force(cnf):
    expected = [x for x in powerset(cnf.width) if all(c.holds(x) for c in cnf.clauses)]
    res = enumerate_horn_models(cnf)
    assert res.satisfiable == bool(expected)
    check_family(res.family, expected)


@settings(max_examples=100, deadline=None)
@given(horn_cnfs(), st.integers(0, 6), st.integers(1, 3))
def test_min_ones_match_brute_force(cnf, k, t):
    expected = [
        x for x in powerset(cnf.width) if len(x) >= k and all(c.holds(x) for c in cnf.clauses)
    ]
    check_family(enumerate_min_ones(cnf, k, t), expected)


@settings(max_examples=150, deadline=None)
@given(cap_lists())
def test_caps_match_brute_force(problem):
    w, caps = problem
    expected = [x for x in powerset(w) if all(c.anchor not in x or len(x & c.body) <= c.limit for c in caps)]
    check_family(enumerate_capped(w, caps), expected)


@settings(max_examples=150, deadline=None)
@given(existential_problems())
def test_existential_match_brute_force(problem):
    cnf, clauses = problem

    def ok(x):
        return all(c.holds(x) for c in cnf.clauses) and all(
            not set(e.guard) <= x or any(t <= x for t in e.terms) for e in clauses
        )

    check_family(enumerate_with_existential(cnf.width, cnf, clauses), [x for x in powerset(cnf.width) if ok(x)])


@settings(max_examples=100, deadline=None)
@given(set_families(), st.randoms(use_true_random=False))
def test_constraint_order_does_not_change_the_union(fam, rnd):
    shuffled = list(fam.sets)
    rnd.shuffle(shuffled)
    a = enumerate_noncovers(fam)
    b = enumerate_noncovers(SetFamily(fam.width, tuple(shuffled)))
    assert members(a) == members(b)


@settings(max_examples=100, deadline=None)
@given(set_families(), st.data())
def test_adding_supersets_is_harmless(fam, data):
    if not fam.sets:
        return
    base = data.draw(st.sampled_from(fam.sets))
    extra = base | data.draw(subsets(fam.width))
    bigger = SetFamily(fam.width, fam.sets + (extra,))
    assert members(enumerate_noncovers(bigger)) == members(enumerate_noncovers(fam))


@settings(max_examples=100, deadline=None)
@given(implication_lists())
def test_every_final_row_satisfies_every_constraint(problem):
    w, imps = problem
    cons = [Closure(i.premise, i.conclusion - i.premise) for i in imps if i.conclusion - i.premise]
    fam = run(w, cons)
    for row in fam.rows:
        assert all(c.holds(row) for c in cons)
        for x in row_expand(row)[:5]:
            assert row_contains(row, x)
            ones = set_of(x)
            assert all(not c.premise <= ones or c.conclusion <= ones for c in cons)
