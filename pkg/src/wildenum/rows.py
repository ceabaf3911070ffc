"""Wildcard rows: compressed, exactly countable descriptions of sets of bitstrings.

A row fixes some positions to 0 or 1, leaves others free ("2"), and ties the
remaining positions together in wildcard groups, each of which carries a joint
predicate over its member positions.  Groups are independent of each other, so
the size of a row is a product of per-factor counts.

Positions are 0-based throughout.  A bitstring is a tuple of 0/1 ints.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Iterable, NamedTuple, Sequence

Bits = tuple[int, ...]

ZERO, ONE, FREE = 0, 1, 2


class MalformedRowError(ValueError):
    pass


class ExpansionCapError(RuntimeError):
    """Raised instead of materialising more bitstrings than the caller allowed."""


class Kind(Enum):
    N = "n"  # at least one 0
    N2 = "n2"  # at least two 0s
    EPS = "eps"  # at most one 1
    EPS2 = "eps2"  # at most two 1s
    GAMMA = "gamma"  # exactly one 0
    A_C = "a-c"  # anchor = 1 => body all 0
    A_EPS = "a-eps"  # anchor = 1 => at most one 1 in body
    A_EPS2 = "a-eps2"  # anchor = 1 => at most two 1s in body

    @property
    def anchored(self) -> bool:
        return self in (Kind.A_C, Kind.A_EPS, Kind.A_EPS2)


_MIN_SIZE = {
    Kind.N: 2,
    Kind.N2: 3,
    Kind.EPS: 2,
    Kind.EPS2: 3,
    Kind.GAMMA: 2,
    Kind.A_C: 1,
    Kind.A_EPS: 1,
    Kind.A_EPS2: 1,
}

# ones allowed in the body once the anchor is 1
_BODY_LIMIT = {Kind.A_C: 0, Kind.A_EPS: 1, Kind.A_EPS2: 2}


@dataclass(frozen=True)
class Group:
    kind: Kind
    members: frozenset[int]
    anchor: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if self.kind.anchored != (self.anchor is not None):
            raise MalformedRowError(f"{self.kind.value} group anchor mismatch")
        if len(self.members) < _MIN_SIZE[self.kind]:
            raise MalformedRowError(
                f"{self.kind.value} group needs >= {_MIN_SIZE[self.kind]} members, "
                f"got {len(self.members)}"
            )
        if self.anchor is not None and self.anchor in self.members:
            raise MalformedRowError("anchor position is also a body member")

    @property
    def positions(self) -> frozenset[int]:
        if self.anchor is None:
            return self.members
        return self.members | {self.anchor}

    def count(self) -> int:
        k = len(self.members)
        return {
            Kind.N: 2**k - 1,
            Kind.N2: 2**k - 1 - k,
            Kind.EPS: 1 + k,
            Kind.EPS2: 1 + k + comb(k, 2),
            Kind.GAMMA: k,
            Kind.A_C: 2**k + 1,
            Kind.A_EPS: 2**k + 1 + k,
            Kind.A_EPS2: 2**k + 1 + k + comb(k, 2),
        }[self.kind]

    def admits(self, x: Sequence[int]) -> bool:
        ones = sum(x[p] for p in self.members)
        zeros = len(self.members) - ones
        kind = self.kind
        if kind is Kind.N:
            return zeros >= 1
        if kind is Kind.N2:
            return zeros >= 2
        if kind is Kind.GAMMA:
            return zeros == 1
        if kind is Kind.EPS:
            return ones <= 1
        if kind is Kind.EPS2:
            return ones <= 2
        return x[self.anchor] == 0 or ones <= _BODY_LIMIT[kind]

    def max_ones(self, within: frozenset[int]) -> int:
        """Largest number of 1s the group can place on ``within``."""
        part = len(self.members & within)
        outside = len(self.members) - part
        kind = self.kind
        if kind is Kind.N:
            return part - (1 if outside == 0 else 0)
        if kind is Kind.N2:
            return part - max(0, 2 - outside)
        if kind is Kind.GAMMA:
            return part - (1 if outside == 0 else 0)
        if kind is Kind.EPS:
            return min(1, part)
        if kind is Kind.EPS2:
            return min(2, part)
        if self.anchor in within:
            return max(part, 1 + min(_BODY_LIMIT[kind], part))
        return part

    def min_ones(self, within: frozenset[int]) -> int:
        if self.kind is Kind.GAMMA:
            return max(0, len(self.members & within) - 1)
        return 0

    def assignments(self) -> list[tuple[tuple[int, ...], Bits]]:
        """All admitted value vectors over ``sorted(positions)``, lexicographic."""
        pos = tuple(sorted(self.positions))
        width = max(pos) + 1
        out = []
        for vals in itertools.product((0, 1), repeat=len(pos)):
            x = [0] * width
            for p, b in zip(pos, vals):
                x[p] = b
            if self.admits(x):
                out.append(vals)
        return [(pos, v) for v in out]


class Member(NamedTuple):
    """Cell of a position that belongs to wildcard group ``group``."""

    group: int
    role: str  # "member" or "anchor"


@dataclass(frozen=True)
class WildcardRow:
    width: int
    zeros: frozenset[int] = frozenset()
    ones: frozenset[int] = frozenset()
    groups: tuple[Group, ...] = ()

    def __post_init__(self):
        zeros, ones = frozenset(self.zeros), frozenset(self.ones)
        groups = tuple(sorted(self.groups, key=lambda g: min(g.positions)))
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "ones", ones)
        object.__setattr__(self, "groups", groups)
        seen: set[int] = set()
        for chunk in (zeros, ones, *(g.positions for g in groups)):
            if seen & chunk:
                raise MalformedRowError(f"positions {sorted(seen & chunk)} used twice")
            seen |= chunk
        if seen and (min(seen) < 0 or max(seen) >= self.width):
            raise MalformedRowError("position out of range")

    @classmethod
    def full(cls, width: int) -> WildcardRow:
        return cls(width)

    @property
    def grouped(self) -> frozenset[int]:
        return frozenset().union(*(g.positions for g in self.groups))

    @property
    def free(self) -> frozenset[int]:
        return frozenset(range(self.width)) - self.zeros - self.ones - self.grouped

    def group_of(self, pos: int) -> Group | None:
        for g in self.groups:
            if pos in g.members or pos == g.anchor:
                return g
        return None

    @property
    def cells(self) -> list:
        cells: list = [FREE] * self.width
        for p in self.zeros:
            cells[p] = ZERO
        for p in self.ones:
            cells[p] = ONE
        for gid, g in enumerate(self.groups):
            for p in g.members:
                cells[p] = Member(gid, "member")
            if g.anchor is not None:
                cells[g.anchor] = Member(gid, "anchor")
        return cells

    def __str__(self) -> str:
        return format_row(self)


def row_cardinality(row: WildcardRow) -> int:
    total = 2 ** len(row.free)
    for g in row.groups:
        total *= g.count()
    return total


def row_contains(row: WildcardRow, x: Sequence[int]) -> bool:
    if len(x) != row.width:
        raise ValueError(f"bitstring has length {len(x)}, row width is {row.width}")
    if any(x[p] for p in row.zeros) or not all(x[p] for p in row.ones):
        return False
    return all(g.admits(x) for g in row.groups)


def row_expand(row: WildcardRow, cap: int = 1 << 20) -> list[Bits]:
    """Every bitstring of ``row`` in lexicographic order (0 < 1, left to right)."""
    if row_cardinality(row) > cap:
        raise ExpansionCapError(f"row has {row_cardinality(row)} members, cap is {cap}")
    factors = [[((p,), (0,)), ((p,), (1,))] for p in sorted(row.free)]
    factors += [g.assignments() for g in row.groups]
    base = [0] * row.width
    for p in row.ones:
        base[p] = 1
    out = []
    for combo in itertools.product(*factors):
        x = list(base)
        for pos, vals in combo:
            for p, b in zip(pos, vals):
                x[p] = b
        out.append(tuple(x))
    out.sort()
    return out


def max_ones(row: WildcardRow, positions: Iterable[int]) -> int:
    """Maximum of |X ∩ positions| over the members X of ``row``."""
    within = frozenset(positions)
    total = len(row.ones & within) + len(row.free & within)
    return total + sum(g.max_ones(within) for g in row.groups)


def min_ones(row: WildcardRow, positions: Iterable[int]) -> int:
    within = frozenset(positions)
    return len(row.ones & within) + sum(g.min_ones(within) for g in row.groups)


# -- building and conditioning ------------------------------------------------


class RowBuilder:
    """Mutable scratch copy of a row that folds degenerate groups into cells."""

    def __init__(self, row: WildcardRow, drop: Group | None = None):
        self.width = row.width
        self.zeros = set(row.zeros)
        self.ones = set(row.ones)
        self.groups = [g for g in row.groups if g is not drop]
        self.dead = False

    def copy(self) -> RowBuilder:
        other = RowBuilder.__new__(RowBuilder)
        other.width = self.width
        other.zeros, other.ones = set(self.zeros), set(self.ones)
        other.groups = list(self.groups)
        other.dead = self.dead
        return other

    def add(self, kind: Kind, members: Iterable[int], anchor: int | None = None):
        members = frozenset(members)
        k = len(members)
        if kind is Kind.N:
            if k == 0:
                self.dead = True
            elif k == 1:
                self.zeros |= members
            else:
                self.groups.append(Group(kind, members))
        elif kind is Kind.N2:
            if k <= 1:
                self.dead = True
            elif k == 2:
                self.zeros |= members
            else:
                self.groups.append(Group(kind, members))
        elif kind is Kind.GAMMA:
            if k == 0:
                self.dead = True
            elif k == 1:
                self.zeros |= members
            else:
                self.groups.append(Group(kind, members))
        elif kind is Kind.EPS:
            if k >= 2:
                self.groups.append(Group(kind, members))
        elif kind is Kind.EPS2:
            if k >= 3:
                self.groups.append(Group(kind, members))
        elif k > _BODY_LIMIT[kind]:
            self.groups.append(Group(kind, members, anchor))
        return self

    def build(self) -> WildcardRow | None:
        if self.dead:
            return None
        return WildcardRow(self.width, self.zeros, self.ones, tuple(self.groups))


def condition(row: WildcardRow, pos: int, bit: int) -> WildcardRow | None:
    """The members of ``row`` with ``x[pos] == bit``, as a row (None if empty)."""
    if pos in row.zeros:
        return row if bit == 0 else None
    if pos in row.ones:
        return row if bit == 1 else None
    g = row.group_of(pos)
    b = RowBuilder(row, drop=g)
    (b.ones if bit else b.zeros).add(pos)
    if g is None:
        return b.build()
    kind = g.kind
    if pos == g.anchor:
        if bit:
            if kind is Kind.A_C:
                b.zeros |= g.members
            else:
                b.add(Kind.EPS if kind is Kind.A_EPS else Kind.EPS2, g.members)
        return b.build()
    rest = g.members - {pos}
    if kind is Kind.N:
        if bit:
            b.add(Kind.N, rest)
    elif kind is Kind.N2:
        b.add(Kind.N2 if bit else Kind.N, rest)
    elif kind is Kind.GAMMA:
        if bit:
            b.add(Kind.GAMMA, rest)
        else:
            b.ones |= rest
    elif kind is Kind.EPS:
        if bit:
            b.zeros |= rest
        else:
            b.add(Kind.EPS, rest)
    elif kind is Kind.EPS2:
        b.add(Kind.EPS if bit else Kind.EPS2, rest)
    elif not bit:
        b.add(kind, rest, g.anchor)
    elif kind is Kind.A_C:
        b.zeros.add(g.anchor)
    else:
        b.add(Kind.A_C if kind is Kind.A_EPS else Kind.A_EPS, rest, g.anchor)
    return b.build()


def force(row: WildcardRow | None, positions: Iterable[int], bit: int) -> WildcardRow | None:
    for p in sorted(positions):
        if row is None:
            return None
        row = condition(row, p, bit)
    return row


# -- families -----------------------------------------------------------------


@dataclass(frozen=True)
class RowFamily:
    width: int
    rows: tuple[WildcardRow, ...] = ()
    disjoint: bool = True

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            if r.width != self.width:
                raise MalformedRowError(f"row width {r.width} != family width {self.width}")

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


def family_cardinality(fam: RowFamily) -> int:
    if not fam.disjoint:
        raise ValueError("family is not marked disjoint; summing rows would overcount")
    return sum(row_cardinality(r) for r in fam.rows)


def family_expand(fam: RowFamily, cap: int = 1 << 20) -> set[Bits]:
    out: set[Bits] = set()
    budget = cap
    for r in fam.rows:
        members = row_expand(r, budget)
        budget -= len(members)
        out.update(members)
    return out


def _bottom(row: WildcardRow, ones: frozenset[int]) -> Bits:
    return tuple(1 if p in ones else 0 for p in range(row.width))


def rows_intersect(a: WildcardRow, b: WildcardRow, cap: int = 1 << 20) -> bool:
    if a.width != b.width:
        raise ValueError("width mismatch")
    if a.ones & b.zeros or a.zeros & b.ones:
        return False
    if any(g.kind is Kind.GAMMA for g in a.groups + b.groups):
        small, big = sorted((a, b), key=row_cardinality)
        return any(row_contains(big, x) for x in row_expand(small, cap))
    # every non-gamma group predicate is closed under turning 1s into 0s, so a
    # common member exists iff the sparsest candidate (forced ones only) is one
    x = _bottom(a, a.ones | b.ones)
    return row_contains(a, x) and row_contains(b, x)


def family_pairwise_disjoint(fam: RowFamily, cap: int = 1 << 20) -> bool:
    rows = fam.rows
    return not any(
        rows_intersect(rows[i], rows[j], cap)
        for i in range(len(rows))
        for j in range(i + 1, len(rows))
    )


def bits_of(subset: Iterable[int], width: int) -> Bits:
    s = set(subset)
    return tuple(1 if p in s else 0 for p in range(width))


def set_of(x: Sequence[int]) -> frozenset[int]:
    return frozenset(p for p, b in enumerate(x) if b)


# -- text and JSON ------------------------------------------------------------

_PLAIN_LETTER = {Kind.N: "n", Kind.N2: "N", Kind.EPS: "e", Kind.EPS2: "E", Kind.GAMMA: "g"}
_BODY_LETTER = {Kind.A_C: "c", Kind.A_EPS: "f", Kind.A_EPS2: "F"}
_LETTER_KIND = {v: k for k, v in (_PLAIN_LETTER | _BODY_LETTER).items()}


class RowParseError(ValueError):
    pass


def row_tokens(row: WildcardRow) -> list[str]:
    tokens = []
    for cell in row.cells:
        if isinstance(cell, Member):
            g = row.groups[cell.group]
            gid = cell.group + 1
            if cell.role == "anchor":
                tokens.append(f"a{gid}")
            elif g.kind.anchored:
                tokens.append(f"{_BODY_LETTER[g.kind]}{gid}")
            else:
                tokens.append(f"{_PLAIN_LETTER[g.kind]}{gid}")
        else:
            tokens.append(str(cell))
    return tokens


def format_row(row: WildcardRow) -> str:
    return " ".join(row_tokens(row))


def row_from_tokens(tokens: Sequence[str]) -> WildcardRow:
    zeros, ones = set(), set()
    anchors: dict[str, int] = {}
    members: dict[str, tuple[Kind, set[int]]] = {}
    for p, tok in enumerate(tokens):
        if tok in ("0", "1", "2"):
            {"0": zeros, "1": ones, "2": set()}[tok].add(p)
            continue
        letter, gid = tok[:1], tok[1:]
        if not gid:
            raise RowParseError(f"token {tok!r} lacks a group id")
        if letter == "a":
            if gid in anchors:
                raise RowParseError(f"group {gid} has two anchors")
            anchors[gid] = p
            continue
        if letter not in _LETTER_KIND:
            raise RowParseError(f"unknown cell token {tok!r}")
        kind = _LETTER_KIND[letter]
        known = members.setdefault(gid, (kind, set()))
        if known[0] is not kind:
            raise RowParseError(f"group {gid} mixes kinds")
        known[1].add(p)
    groups = []
    try:
        for gid, (kind, pos) in members.items():
            if kind.anchored:
                if gid not in anchors:
                    raise RowParseError(f"group {gid} has a body but no anchor")
                groups.append(Group(kind, frozenset(pos), anchors.pop(gid)))
            else:
                if gid in anchors:
                    raise RowParseError(f"group {gid} is anchored but has a plain body")
                groups.append(Group(kind, frozenset(pos)))
        if anchors:
            raise RowParseError(f"anchor without body in group(s) {sorted(anchors)}")
        return WildcardRow(len(tokens), zeros, ones, tuple(groups))
    except MalformedRowError as exc:
        raise RowParseError(str(exc)) from exc


def parse_row(line: str) -> WildcardRow:
    return row_from_tokens(line.split())


def format_family(fam: RowFamily) -> str:
    return "".join(format_row(r) + "\n" for r in fam.rows)


def parse_family(text: str, width: int | None = None) -> RowFamily:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append(parse_row(line))
        except ValueError as exc:
            raise RowParseError(f"line {lineno}: {exc}") from exc
    if width is None:
        width = rows[0].width if rows else 0
    return RowFamily(width, tuple(rows))


def row_to_json(row: WildcardRow) -> dict:
    groups = []
    for gid, g in enumerate(row.groups, 1):
        groups.append({"id": str(gid), "kind": g.kind.value})
    return {"cells": row_tokens(row), "groups": groups}


def row_from_json(obj: dict) -> WildcardRow:
    row = row_from_tokens(obj["cells"])
    declared = {str(g["id"]): Kind(g["kind"]) for g in obj.get("groups", [])}
    for tok in obj["cells"]:
        gid = tok[1:]
        if tok[:1] in _LETTER_KIND and gid in declared and declared[gid] is not _LETTER_KIND[tok[:1]]:
            raise RowParseError(f"group {gid} declared {declared[gid].value} but cells disagree")
    return row


def family_to_json(fam: RowFamily, legend: Sequence[str] | None = None) -> str:
    doc = {
        "width": fam.width,
        "legend": list(legend) if legend is not None else [str(p) for p in range(fam.width)],
        "row_count": len(fam.rows),
        "total": family_cardinality(fam) if fam.disjoint else None,
        "rows": [row_to_json(r) for r in fam.rows],
    }
    return json.dumps(doc, indent=2)
