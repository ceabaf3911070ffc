"""Brute-force reference answers, decided straight from the definitions.

Nothing here touches the enumeration engines or the path/cycle generators of
``graph``: only the ``Graph`` and ``Partition`` containers are shared.  Searches,
distances and cycle listings are reimplemented naively on purpose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable

from .graph import Graph, Partition
from .rows import RowFamily, family_expand, row_cardinality, set_of

SUBSET_LIMIT = 20
PARTITION_LIMIT = 10


class OracleSizeError(ValueError):
    pass


class Predicate(Enum):
    CONNECTED = "connected"
    METRIC = "metric"
    GECONVEX = "geconvex"
    MOCONVEX = "moconvex"
    FOREST = "forest"
    CHORDAL = "chordal"
    BIPARTITE = "bipartite"
    TRIANGLEFREE = "trianglefree"
    CHORDLESS = "chordless"
    ANTICLIQUES = "anticliques"
    CLIQUES = "cliques"
    ISOMATCHINGS = "isomatchings"
    CLIPAC = "clipac"
    CONNPAC = "connpac"


PARTITION_PREDICATES = (Predicate.CLIPAC, Predicate.CONNPAC)


# -- naive graph helpers ----------------------------------------------------------


def _reach(g: Graph, start: int, allowed: frozenset[int]) -> set[int]:
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w in allowed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _connected(g: Graph, xs: frozenset[int]) -> bool:
    return not xs or _reach(g, min(xs), xs) == set(xs)


def _dist_within(g: Graph, s: int, allowed: frozenset[int]) -> dict[int, int]:
    dist, frontier = {s: 0}, [s]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if w in allowed and w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def simple_paths(g: Graph, s: int, t: int) -> list[tuple[int, ...]]:
    """Every simple s-t path, by plain depth-first search."""
    out = []

    def dfs(path: list[int], seen: set[int]):
        u = path[-1]
        if u == t:
            out.append(tuple(path))
            return
        for w in sorted(g.adj[u]):
            if w not in seen:
                seen.add(w)
                path.append(w)
                dfs(path, seen)
                path.pop()
                seen.discard(w)

    dfs([s], {s})
    return out


def is_chordless_path(g: Graph, path: tuple[int, ...]) -> bool:
    return not any(
        g.adjacent(path[i], path[j])
        for i in range(len(path))
        for j in range(i + 2, len(path))
    )


def all_cycles(g: Graph) -> list[tuple[int, ...]]:
    """Every cycle once, as a vertex sequence starting at its least vertex."""
    out = []
    for s in range(g.n):
        def dfs(path: list[int]):
            u = path[-1]
            for w in g.adj[u]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                elif w > s and w not in path:
                    path.append(w)
                    dfs(path)
                    path.pop()

        dfs([s])
    return out


def cycle_edges(g: Graph, cyc: tuple[int, ...]) -> frozenset[int]:
    return frozenset(
        g.edge_index[frozenset((cyc[i], cyc[(i + 1) % len(cyc)]))] for i in range(len(cyc))
    )


# -- per-graph predicate machinery ----------------------------------------------------


class _Judge:
    def __init__(self, g: Graph):
        self.g = g
        everything = frozenset(range(g.n))
        self.dist = [_dist_within(g, s, everything) for s in range(g.n)]
        self._mono: dict[tuple[int, int], frozenset[int] | None] = {}

    def d(self, s: int, t: int) -> float:
        return self.dist[s].get(t, math.inf)

    def geodesic_interval(self, s: int, t: int) -> frozenset[int]:
        return frozenset(
            w for w in range(self.g.n) if self.d(s, w) + self.d(w, t) == self.d(s, t)
        )

    def monophonic_interval(self, s: int, t: int) -> frozenset[int] | None:
        key = (s, t)
        if key not in self._mono:
            paths = [p for p in simple_paths(self.g, s, t) if is_chordless_path(self.g, p)]
            self._mono[key] = frozenset(v for p in paths for v in p) if paths else None
        return self._mono[key]

    def __call__(self, pred: Predicate, xs: frozenset[int]) -> bool:
        g = self.g
        pairs = list(combinations(sorted(xs), 2))
        inner_deg = [len(g.adj[v] & xs) for v in xs]
        if pred is Predicate.CONNECTED:
            return _connected(g, xs)
        if pred is Predicate.METRIC:
            # some shortest path of G stays inside X
            return all(
                self.d(s, t) < math.inf and _dist_within(g, s, xs).get(t) == self.d(s, t)
                for s, t in pairs
            )
        if pred is Predicate.GECONVEX:
            return all(
                self.d(s, t) < math.inf and self.geodesic_interval(s, t) <= xs for s, t in pairs
            )
        if pred is Predicate.MOCONVEX:
            for s, t in pairs:
                iv = self.monophonic_interval(s, t)
                if iv is None or not iv <= xs:
                    return False
            return True
        if pred is Predicate.FOREST:
            edges = sum(inner_deg) // 2
            comps = _components(g, xs)
            return edges == len(xs) - comps
        if pred is Predicate.CHORDAL:
            return _chordal(g, xs)
        if pred is Predicate.BIPARTITE:
            return _two_colourable(g, xs)
        if pred is Predicate.TRIANGLEFREE:
            return not any(
                g.adjacent(a, b) and g.adjacent(b, c) and g.adjacent(a, c)
                for a, b, c in combinations(sorted(xs), 3)
            )
        if pred is Predicate.CHORDLESS:
            return all(d <= 2 for d in inner_deg)
        if pred is Predicate.ISOMATCHINGS:
            return all(d <= 1 for d in inner_deg)
        if pred is Predicate.ANTICLIQUES:
            return all(d == 0 for d in inner_deg)
        if pred is Predicate.CLIQUES:
            return all(g.adjacent(s, t) for s, t in pairs)
        raise ValueError(f"{pred} is not a vertex-subset predicate")


def _components(g: Graph, xs: frozenset[int]) -> int:
    left, count = set(xs), 0
    while left:
        left -= _reach(g, min(left), xs)
        count += 1
    return count


def _chordal(g: Graph, xs: frozenset[int]) -> bool:
    """Repeatedly delete a simplicial vertex; chordal iff this empties X."""
    left = set(xs)
    while left:
        for v in sorted(left):
            nb = g.adj[v] & left
            if all(g.adjacent(a, b) for a, b in combinations(nb, 2)):
                left.remove(v)
                break
        else:
            return False
    return True


def _two_colourable(g: Graph, xs: frozenset[int]) -> bool:
    colour: dict[int, int] = {}
    for root in sorted(xs):
        if root in colour:
            continue
        colour[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.adj[u] & xs:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def subset_key(s: frozenset[int]) -> tuple:
    return (len(s), sorted(s))


def oracle_subsets(g: Graph, pred: Predicate | str) -> list[frozenset[int]]:
    """All X ⊆ V satisfying ``pred``, sorted by size then elements."""
    pred = Predicate(pred)
    if pred in PARTITION_PREDICATES:
        raise ValueError(f"{pred.value} is a partition predicate")
    if g.n > SUBSET_LIMIT:
        raise OracleSizeError(f"{g.n} vertices exceeds the subset oracle limit {SUBSET_LIMIT}")
    judge = _Judge(g)
    out = []
    for mask in range(1 << g.n):
        xs = frozenset(v for v in range(g.n) if mask >> v & 1)
        if judge(pred, xs):
            out.append(xs)
    return sorted(out, key=subset_key)


# -- partitions -------------------------------------------------------------------


def set_partitions(items: list[int]) -> Iterable[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def is_clipac(g: Graph, p: Partition) -> bool:
    return all(g.adjacent(a, b) for blk in p.blocks for a, b in combinations(blk, 2))


def is_connpac(g: Graph, p: Partition) -> bool:
    return all(_connected(g, blk) for blk in p.blocks)


def oracle_partitions(g: Graph, pred: Predicate | str) -> list[Partition]:
    pred = Predicate(pred)
    if pred not in PARTITION_PREDICATES:
        raise ValueError(f"{pred.value} is not a partition predicate")
    if g.n > PARTITION_LIMIT:
        raise OracleSizeError(f"{g.n} vertices exceeds the partition oracle limit {PARTITION_LIMIT}")
    test = is_clipac if pred is Predicate.CLIPAC else is_connpac
    out = []
    for blocks in set_partitions(list(range(g.n))):
        p = Partition(tuple(frozenset(b) for b in blocks))
        if test(g, p):
            out.append(p)
    return sorted(out, key=lambda p: [sorted(b) for b in p.blocks])


def internal_edges(g: Graph, p: Partition) -> frozenset[int]:
    where = {v: i for i, blk in enumerate(p.blocks) for v in blk}
    return frozenset(k for k, (u, v) in enumerate(g.edges) if where[u] == where[v])


def oracle_edge_sets(g: Graph, pred: Predicate | str) -> list[frozenset[int]]:
    """Edge sets of the packings accepted by a partition predicate."""
    sets = {internal_edges(g, p) for p in oracle_partitions(g, pred)}
    return sorted(sets, key=subset_key)


# -- comparison -----------------------------------------------------------------


@dataclass
class Comparison:
    equal: bool
    missing: list[frozenset[int]] = field(default_factory=list)  # in reference only
    extra: list[frozenset[int]] = field(default_factory=list)  # in family only
    duplicates: int = 0

    @property
    def witness(self) -> frozenset[int] | None:
        if self.missing:
            return self.missing[0]
        if self.extra:
            return self.extra[0]
        return None

    def report(self) -> str:
        if self.equal:
            return "equal"
        parts = []
        if self.missing:
            parts.append(f"missing {sorted(self.missing[0])}")
        if self.extra:
            parts.append(f"unexpected {sorted(self.extra[0])}")
        if self.duplicates:
            parts.append(f"{self.duplicates} members covered twice")
        return "; ".join(parts)


def compare_family(
    fam: RowFamily, reference: Iterable[frozenset[int]], cap: int = 1 << 20
) -> Comparison:
    """Set equality between the rows' union and ``reference``.

    Members lying in two rows are counted as a failure too, since a family that
    claims disjointness would then overcount.
    """
    got = {set_of(x) for x in family_expand(fam, cap)}
    total = sum(row_cardinality(r) for r in fam.rows)
    ref = set(map(frozenset, reference))
    missing = sorted(ref - got, key=subset_key)
    extra = sorted(got - ref, key=subset_key)
    dup = total - len(got)
    return Comparison(not missing and not extra and dup == 0, missing, extra, dup)
