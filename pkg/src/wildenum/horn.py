"""Constraint imposition on a LIFO stack of wildcard rows.

Every engine starts from the full row (all positions free) and imposes its
constraints one at a time on the top row of a stack.  Imposing a constraint
replaces the row by disjoint sons whose union is exactly the part of the row
that satisfies the constraint, so the final rows are pairwise disjoint.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .rows import (
    Kind,
    RowBuilder,
    RowFamily,
    WildcardRow,
    condition,
    force,
    max_ones,
    min_ones,
)


@dataclass(frozen=True)
class SetFamily:
    width: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        for s in sets:
            if any(p < 0 or p >= self.width for p in s):
                raise ValueError(f"set {sorted(s)} leaves the ground set of width {self.width}")


@dataclass(frozen=True)
class Implication:
    premise: frozenset[int]
    conclusion: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "premise", frozenset(self.premise))
        object.__setattr__(self, "conclusion", frozenset(self.conclusion))


@dataclass(frozen=True)
class HornClause:
    negatives: frozenset[int]
    positive: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "negatives", frozenset(self.negatives))
        if self.positive is not None and self.positive in self.negatives:
            raise ValueError("positive literal also occurs negated")

    def holds(self, ones: frozenset[int] | set[int]) -> bool:
        return not self.negatives <= ones or (self.positive is not None and self.positive in ones)


@dataclass(frozen=True)
class HornCNF:
    width: int
    clauses: tuple[HornClause, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        for c in self.clauses:
            lits = set(c.negatives) | ({c.positive} if c.positive is not None else set())
            if any(p < 0 or p >= self.width for p in lits):
                raise ValueError("clause mentions a position outside the width")


@dataclass(frozen=True)
class ExistentialClause:
    """``s and t  =>  some term is wholly present``."""

    guard: tuple[int, int]
    terms: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(frozenset(t) for t in self.terms))
        if any(set(self.guard) & t for t in self.terms):
            raise ValueError("terms must exclude the guard positions")


# -- constraints --------------------------------------------------------------


def _noncover_split(row: WildcardRow, a: frozenset[int]):
    """Sons partitioning {X in row : a ⊄ X}, and the row of X ⊇ a.

    Requires every group meeting ``a`` to be an n-group.  The part of ``a`` not
    forced to 1 splits into the pieces B_j it cuts from existing n-groups plus
    the free positions T.  Son j has a 0 in B_j with B_1..B_{j-1} all 1; the
    last son puts a fresh n-group on T.
    """
    a1 = a - row.ones
    touched: list = []
    for g in row.groups:
        b = g.members & a1
        if b:
            touched.append((g, b))
    t = a1 & row.free
    base = RowBuilder(row)
    base.groups = [g for g in base.groups if not any(g is tg for tg, _ in touched)]

    def prefix(builder: RowBuilder, upto: int) -> RowBuilder:
        for g, b in touched[:upto]:
            builder.ones |= b
            builder.add(Kind.N, g.members - b)
        return builder

    sons = []
    for j, (g, b) in enumerate(touched):
        son = prefix(base.copy(), j).add(Kind.N, b)
        son.groups += [tg for tg, _ in touched[j + 1 :]]
        sons.append(son.build())
    if t:
        sons.append(prefix(base.copy(), len(touched)).add(Kind.N, t).build())
    full = prefix(base.copy(), len(touched))
    full.ones |= t
    return [s for s in sons if s is not None], full.build()


def _plain_touch(row: WildcardRow, positions: Iterable[int]) -> int | None:
    """First position of ``positions`` lying in a group that is not an n-group."""
    for p in sorted(positions):
        g = row.group_of(p)
        if g is not None and g.kind is not Kind.N:
            return p
    return None


def _shannon(row: WildcardRow, pos: int, impose: Callable) -> list[WildcardRow]:
    sons = []
    for bit in (0, 1):
        r = condition(row, pos, bit)
        if r is not None:
            sons += impose(r)
    return sons


@dataclass(frozen=True)
class Noncover:
    positions: frozenset[int]

    def holds(self, row: WildcardRow) -> bool:
        return max_ones(row, self.positions) < len(self.positions)

    def impose(self, row: WildcardRow) -> list[WildcardRow]:
        if self.holds(row):
            return [row]
        p = _plain_touch(row, self.positions)
        if p is not None:
            return _shannon(row, p, self.impose)
        return _noncover_split(row, self.positions)[0]

    def clauses(self) -> list[HornClause]:
        return [HornClause(self.positions)]


@dataclass(frozen=True)
class Closure:
    premise: frozenset[int]
    conclusion: frozenset[int]

    def holds(self, row: WildcardRow) -> bool:
        return self.conclusion <= row.ones or max_ones(row, self.premise) < len(self.premise)

    def impose(self, row: WildcardRow) -> list[WildcardRow]:
        if self.holds(row):
            return [row]
        p = _plain_touch(row, self.premise | self.conclusion)
        if p is not None:
            return _shannon(row, p, self.impose)
        sons, full = _noncover_split(row, self.premise)
        forced = force(full, self.conclusion, 1)
        if forced is not None:
            sons.append(forced)
        return sons

    def clauses(self) -> list[HornClause]:
        return [HornClause(self.premise, q) for q in sorted(self.conclusion)]


@dataclass(frozen=True)
class Existential:
    s: int
    t: int
    terms: tuple[frozenset[int], ...]

    def holds(self, row: WildcardRow) -> bool:
        if max_ones(row, (self.s, self.t)) < 2:
            return True
        return any(term <= row.ones for term in self.terms)

    def impose(self, row: WildcardRow) -> list[WildcardRow]:
        if self.holds(row):
            return [row]
        out = []
        r = condition(row, self.s, 0)
        if r is not None:
            out.append(r)
        both = condition(row, self.s, 1)
        if both is None:
            return out
        r = condition(both, self.t, 0)
        if r is not None:
            out.append(r)
        both = condition(both, self.t, 1)
        layer = [both] if both is not None else []
        # branch j: terms 1..j-1 each violated, term j wholly present
        for term in self.terms:
            if not layer:
                break
            nxt = []
            for q in layer:
                f = force(q, term, 1)
                if f is not None:
                    out.append(f)
                nxt += Noncover(term).impose(q)
            layer = nxt
        return out

    def clauses(self) -> None:
        return None


@dataclass(frozen=True)
class Cap:
    """``anchor in X  =>  |X ∩ body| <= limit`` for limit in {0, 1, 2}."""

    anchor: int
    body: frozenset[int]
    limit: int

    def __post_init__(self):
        object.__setattr__(self, "body", frozenset(self.body))
        if self.anchor in self.body:
            raise ValueError("cap body must exclude its anchor")
        if self.limit not in (0, 1, 2):
            raise ValueError("cap limit must be 0, 1 or 2")

    def holds(self, row: WildcardRow) -> bool:
        r = condition(row, self.anchor, 1)
        return r is None or max_ones(r, self.body) <= self.limit

    def impose(self, row: WildcardRow) -> list[WildcardRow]:
        if self.holds(row):
            return [row]
        v = self.anchor
        anchor_open = v not in row.ones
        grouped = [p for p in sorted(self.body) if row.group_of(p) is not None]
        if row.group_of(v) is not None or (anchor_open and grouped):
            sons = []
            r = condition(row, v, 0)
            if r is not None:
                sons.append(r)
            r = condition(row, v, 1)
            if r is not None:
                sons += self.impose(r)
            return sons
        if grouped:
            return _shannon(row, grouped[0], self.impose)
        room = self.limit - len(self.body & row.ones)
        body = self.body & row.free
        b = RowBuilder(row)
        if room < 0:
            return [condition(row, v, 0)] if anchor_open else []
        if anchor_open:
            kind = (Kind.A_C, Kind.A_EPS, Kind.A_EPS2)[room]
            b.add(kind, body, v)
        elif room == 0:
            b.zeros |= body
        else:
            b.add(Kind.EPS if room == 1 else Kind.EPS2, body)
        return [b.build()]

    def clauses(self) -> list[HornClause]:
        return [
            HornClause(frozenset(c) | {self.anchor})
            for c in itertools.combinations(sorted(self.body), self.limit + 1)
        ]


# -- the stack engine ---------------------------------------------------------


def run(
    width: int,
    constraints: Sequence,
    keep: Callable[[WildcardRow], bool] | None = None,
    start: WildcardRow | None = None,
) -> RowFamily:
    """Impose ``constraints`` in order; ``keep`` may discard rows as they surface."""
    stack = [(start or WildcardRow.full(width), 0)]
    final = []
    h = len(constraints)
    while stack:
        row, pc = stack.pop()
        if keep is not None and not keep(row):
            continue
        while pc < h and constraints[pc].holds(row):
            pc += 1
        if pc == h:
            final.append(row)
            continue
        sons = constraints[pc].impose(row)
        for son in reversed(sons):
            stack.append((son, pc + 1))
    return RowFamily(width, tuple(final), disjoint=True)


# -- normalisation --------------------------------------------------------------


def minimal_sets(sets: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    """Drop duplicates and proper supersets, keeping first-occurrence order."""
    sets = [frozenset(s) for s in sets]
    out = []
    for i, s in enumerate(sets):
        if any(o < s for o in sets) or s in sets[:i]:
            continue
        out.append(s)
    return out


def normalize_implications(imps: Iterable[Implication]) -> list[Closure]:
    merged: dict[frozenset[int], set[int]] = {}
    for imp in imps:
        extra = imp.conclusion - imp.premise
        if extra:
            merged.setdefault(imp.premise, set()).update(extra)
    return [Closure(a, frozenset(b)) for a, b in merged.items()]


def horn_constraints(cnf: HornCNF) -> list:
    negatives = minimal_sets(c.negatives for c in cnf.clauses if c.positive is None)
    order: list = []
    pure: dict[frozenset[int], set[int]] = {}
    seen_neg = set()
    for c in cnf.clauses:
        if c.positive is None:
            if c.negatives in negatives and c.negatives not in seen_neg:
                seen_neg.add(c.negatives)
                order.append(Noncover(c.negatives))
        elif c.negatives not in pure:
            pure[c.negatives] = {c.positive}
            order.append(c.negatives)
        else:
            pure[c.negatives].add(c.positive)
    return [
        Closure(item, frozenset(pure[item])) if not isinstance(item, Noncover) else item
        for item in order
    ]


# -- public engines -----------------------------------------------------------


def enumerate_noncovers(fam: SetFamily) -> RowFamily:
    return run(fam.width, [Noncover(s) for s in minimal_sets(fam.sets)])


def enumerate_closed(imps: Iterable[Implication], width: int) -> RowFamily:
    return run(width, normalize_implications(imps))


def minimal_model(cnf: HornCNF) -> frozenset[int] | None:
    """Least model by unit propagation, or None when unsatisfiable."""
    ones: set[int] = set()
    changed = True
    while changed:
        changed = False
        for c in cnf.clauses:
            if c.negatives <= ones:
                if c.positive is None:
                    return None
                if c.positive not in ones:
                    ones.add(c.positive)
                    changed = True
    return frozenset(ones)


def horn_satisfiable(cnf: HornCNF) -> bool:
    return minimal_model(cnf) is not None


@dataclass(frozen=True)
class HornModels:
    family: RowFamily
    satisfiable: bool


def enumerate_horn_models(cnf: HornCNF) -> HornModels:
    if not horn_satisfiable(cnf):
        return HornModels(RowFamily(cnf.width, ()), False)
    return HornModels(run(cnf.width, horn_constraints(cnf)), True)


def row_clauses(row: WildcardRow) -> list[HornClause]:
    """Horn clauses whose models are exactly the members of ``row``."""
    out = [HornClause(frozenset([p])) for p in sorted(row.zeros)]
    out += [HornClause(frozenset(), p) for p in sorted(row.ones)]
    for g in row.groups:
        m = sorted(g.members)
        if g.kind is Kind.N:
            out.append(HornClause(frozenset(m)))
        elif g.kind is Kind.N2:
            out += [HornClause(frozenset(c)) for c in itertools.combinations(m, len(m) - 1)]
        elif g.kind in (Kind.EPS, Kind.EPS2):
            size = 2 if g.kind is Kind.EPS else 3
            out += [HornClause(frozenset(c)) for c in itertools.combinations(m, size)]
        elif g.kind.anchored:
            size = {Kind.A_C: 1, Kind.A_EPS: 2, Kind.A_EPS2: 3}[g.kind]
            out += [
                HornClause(frozenset(c) | {g.anchor}) for c in itertools.combinations(m, size)
            ]
        else:
            raise ValueError("gamma groups have no Horn encoding")
    return out


def _open_positions(row: WildcardRow) -> list[int]:
    return sorted(set(range(row.width)) - row.zeros - row.ones)


def _good(cnf: HornCNF, row: WildcardRow, extra: Sequence[int]) -> WildcardRow | None:
    son = force(row, extra, 1)
    if son is None:
        return None
    units = [HornClause(frozenset(), p) for p in extra]
    test = HornCNF(cnf.width, cnf.clauses + tuple(row_clauses(son)) + tuple(units))
    return son if horn_satisfiable(test) else None


def lookahead_sons(cnf: HornCNF, row: WildcardRow, t: int) -> list[WildcardRow]:
    """Sons of ``row`` with ``t`` more ones that still meet a model of ``cnf``.

    Candidates extend the ones of ``row`` by a ``t``-subset of its open
    positions, taken in lexicographic order of the subsets.
    """
    sons = []
    for extra in itertools.combinations(_open_positions(row), t):
        son = _good(cnf, row, extra)
        if son is not None:
            sons.append(son)
    return sons


def filter_min_ones(fam: RowFamily, k: int) -> RowFamily:
    """Exact restriction of a disjoint family to members with at least k ones."""
    everything = range(fam.width)
    out = []

    def visit(row: WildcardRow):
        if min_ones(row, everything) >= k:
            out.append(row)
            return
        if max_ones(row, everything) < k:
            return
        p = _open_positions(row)[0]
        for bit in (0, 1):
            r = condition(row, p, bit)
            if r is not None:
                visit(r)

    for row in fam.rows:
        visit(row)
    return RowFamily(fam.width, tuple(out), disjoint=fam.disjoint)


@dataclass
class LookaheadStats:
    pruned: int = 0
    examined: int = 0


def enumerate_min_ones(
    cnf: HornCNF, k: int, t: int = 1, stats: LookaheadStats | None = None
) -> RowFamily:
    """Models with at least ``k`` ones, pruning rows that look ``t`` steps ahead dead."""
    if t < 1 or k < 0:
        raise ValueError("need t >= 1 and k >= 0")
    if not horn_satisfiable(cnf):
        return RowFamily(cnf.width, ())
    stats = stats if stats is not None else LookaheadStats()
    keep = _lookahead_keep(cnf, k, t, stats)
    return filter_min_ones(run(cnf.width, horn_constraints(cnf), keep=keep), k)


def _lookahead_keep(cnf: HornCNF, k: int, t: int, stats: LookaheadStats):
    def keep(row: WildcardRow) -> bool:
        stats.examined += 1
        need = k - len(row.ones)
        if need <= 0:
            return True
        cand = _open_positions(row)
        alive = len(cand) >= need and any(
            _good(cnf, row, extra) is not None
            for extra in itertools.combinations(cand, min(t, need))
        )
        if not alive:
            stats.pruned += 1
        return alive

    return keep


def enumerate_capped(width: int, caps: Iterable) -> RowFamily:
    """Sets X with ``anchor in X => |X ∩ body| <= limit`` for each cap."""
    constraints = []
    for cap in caps:
        if not isinstance(cap, Cap):
            cap = Cap(*cap)
        if len(cap.body) > cap.limit:
            constraints.append(cap)
    return run(width, constraints)


def enumerate_with_existential(
    width: int, horn: HornCNF | None, ex: Iterable[ExistentialClause]
) -> RowFamily:
    constraints = horn_constraints(horn) if horn is not None else []
    for clause in ex:
        s, t = clause.guard
        constraints.append(Existential(s, t, tuple(minimal_sets(clause.terms))))
    return run(width, constraints)


# -- DIMACS-like Horn files ---------------------------------------------------


class HornParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


_HEADER = re.compile(r"^p\s+horn\s+(\d+)\s+(\d+)\s*$")


def parse_horn(text: str) -> HornCNF:
    """Parse ``p horn <width> <clauses>`` followed by 0-terminated clauses.

    Literals are 1-based: ``-3`` negates position 3, ``5`` asserts position 5.
    """
    width = declared = None
    clauses: list[HornClause] = []
    pending: list[int] = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            m = _HEADER.match(line)
            if not m or width is not None:
                raise HornParseError(lineno, f"bad header {line!r}")
            width, declared = int(m.group(1)), int(m.group(2))
            continue
        if width is None:
            raise HornParseError(lineno, "clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise HornParseError(lineno, f"not an integer: {tok!r}") from None
            if lit == 0:
                neg = [-x - 1 for x in pending if x < 0]
                pos = [x - 1 for x in pending if x > 0]
                if len(pos) > 1:
                    raise HornParseError(lineno, "more than one positive literal")
                try:
                    clauses.append(HornClause(frozenset(neg), pos[0] if pos else None))
                except ValueError as exc:
                    raise HornParseError(lineno, str(exc)) from None
                pending = []
            elif abs(lit) > width:
                raise HornParseError(lineno, f"literal {lit} exceeds width {width}")
            else:
                pending.append(lit)
    if width is None:
        raise HornParseError(0, "missing header")
    if pending:
        raise HornParseError(lineno, "last clause lacks its 0 terminator")
    if declared != len(clauses):
        raise HornParseError(lineno, f"header declares {declared} clauses, found {len(clauses)}")
    return HornCNF(width, tuple(clauses))


def format_horn(cnf: HornCNF) -> str:
    lines = [f"p horn {cnf.width} {len(cnf.clauses)}"]
    for c in cnf.clauses:
        lits = [-(p + 1) for p in sorted(c.negatives)]
        if c.positive is not None:
            lits.append(c.positive + 1)
        lines.append(" ".join(map(str, lits + [0])))
    return "\n".join(lines) + "\n"
