"""Induced-subgraph families as compressed row families over the vertex set.

Position ``i`` of every row is vertex ``g.labels[i]``.  Each family is built by
turning its defining property into constraints for the stack engine.
"""

from __future__ import annotations

from enum import Enum

from . import horn
from .graph import (
    Graph,
    all_chordless_cycles,
    all_chordless_paths,
    all_geodesics,
    connected_components,
    paths_by_endpoints,
)
from .horn import Cap, Closure, Existential, Noncover, minimal_sets
from .rows import RowFamily


class FamilyKind(Enum):
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


class Forbidden(Enum):
    ANY = "any"
    LONG = "long"
    ODD = "odd"
    TRIANGLE = "triangle"


def _nonadjacent_pairs(g: Graph):
    comp = connected_components(g)
    for s in range(g.n):
        for t in range(s + 1, g.n):
            if not g.adjacent(s, t):
                yield s, t, comp.block_of(s) == comp.block_of(t)


def _interval_constraints(g: Graph, paths) -> list:
    """``{s,t} -> inner vertices of the given s-t paths``, one per nonadjacent pair.

    Pairs in different components cannot both be present in a convex set, so
    they become plain noncovers.
    """
    by_ends = paths_by_endpoints(paths)
    out = []
    for s, t, joined in _nonadjacent_pairs(g):
        if not joined:
            out.append(Noncover(frozenset((s, t))))
            continue
        inner = frozenset(v for p in by_ends[(s, t)] for v in p[1:-1])
        out.append(Closure(frozenset((s, t)), inner))
    return out


def _existential_constraints(g: Graph, paths) -> list:
    by_ends = paths_by_endpoints(paths)
    out = []
    for s, t, _ in _nonadjacent_pairs(g):
        terms = minimal_sets(frozenset(p[1:-1]) for p in by_ends.get((s, t), []))
        out.append(Existential(s, t, tuple(terms)))
    return out


def cycle_sets(g: Graph, forbidden: Forbidden) -> list[frozenset[int]]:
    keep = {
        Forbidden.ANY: lambda k: True,
        Forbidden.LONG: lambda k: k >= 4,
        Forbidden.ODD: lambda k: k % 2 == 1,
        Forbidden.TRIANGLE: lambda k: k == 3,
    }[forbidden]
    return [frozenset(c.vertices) for c in all_chordless_cycles(g) if keep(len(c))]


def _caps(g: Graph, limit: int) -> list[Cap]:
    return [Cap(v, g.adj[v], limit) for v in range(g.n) if g.degree(v) > limit]


_CYCLE_KINDS = {
    FamilyKind.FOREST: Forbidden.ANY,
    FamilyKind.CHORDAL: Forbidden.LONG,
    FamilyKind.BIPARTITE: Forbidden.ODD,
    FamilyKind.TRIANGLEFREE: Forbidden.TRIANGLE,
}


def family_constraints(g: Graph, kind: FamilyKind) -> list:
    """Constraint list whose simultaneous solutions are exactly the family."""
    if kind is FamilyKind.MOCONVEX:
        return _interval_constraints(g, all_chordless_paths(g))
    if kind is FamilyKind.GECONVEX:
        return _interval_constraints(g, all_geodesics(g))
    if kind is FamilyKind.CONNECTED:
        return _existential_constraints(g, all_chordless_paths(g))
    if kind is FamilyKind.METRIC:
        return _existential_constraints(g, all_geodesics(g))
    if kind in _CYCLE_KINDS:
        return [Noncover(s) for s in minimal_sets(cycle_sets(g, _CYCLE_KINDS[kind]))]
    if kind is FamilyKind.CHORDLESS:
        return _caps(g, 2)
    if kind is FamilyKind.ISOMATCHINGS:
        return _caps(g, 1)
    if kind is FamilyKind.ANTICLIQUES:
        return _caps(g, 0)
    if kind is FamilyKind.CLIQUES:
        return _caps(g.complement(), 0)
    raise ValueError(f"unknown family {kind!r}")


def enumerate_family(g: Graph, kind: FamilyKind | str) -> RowFamily:
    kind = FamilyKind(kind)
    return horn.run(g.n, family_constraints(g, kind))


def enumerate_moconvex(g: Graph) -> RowFamily:
    return enumerate_family(g, FamilyKind.MOCONVEX)


def enumerate_geconvex(g: Graph) -> RowFamily:
    return enumerate_family(g, FamilyKind.GECONVEX)


def enumerate_connected(g: Graph) -> RowFamily:
    return enumerate_family(g, FamilyKind.CONNECTED)


def enumerate_metric(g: Graph) -> RowFamily:
    return enumerate_family(g, FamilyKind.METRIC)


def enumerate_cycle_restricted(g: Graph, forbidden: Forbidden | str) -> RowFamily:
    """Vertex sets X such that G[X] contains no chordless cycle of the given sort."""
    forbidden = Forbidden(forbidden)
    return horn.enumerate_noncovers(horn.SetFamily(g.n, cycle_sets(g, forbidden)))


def enumerate_chordless_sets(g: Graph) -> RowFamily:
    return enumerate_family(g, FamilyKind.CHORDLESS)


def enumerate_isolating_matchings(g: Graph) -> RowFamily:
    return enumerate_family(g, FamilyKind.ISOMATCHINGS)


def enumerate_anticliques(g: Graph) -> RowFamily:
    return enumerate_family(g, FamilyKind.ANTICLIQUES)


def enumerate_cliques(g: Graph) -> RowFamily:
    return enumerate_family(g, FamilyKind.CLIQUES)
