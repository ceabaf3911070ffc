"""Clique packings and connected-set packings, encoded as closed edge sets.

Position ``k`` of every row is edge ``g.edges[k]``.  A packing (partition of V)
corresponds to the set of edges lying inside its blocks; connected components
of such an edge set recover the packing.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import horn
from .graph import (
    Graph,
    Partition,
    all_chordless_cycles,
    all_triangles,
    connected_components,
    is_connected,
)
from .horn import Closure, Implication, Noncover, normalize_implications
from .rows import RowFamily


class InvalidPackingError(ValueError):
    pass


class DisconnectedGraphError(ValueError):
    pass


class NoUniqueCoarseningError(ValueError):
    """Raised when the Conn-Pacs coarser than a partition have no least member."""


@dataclass(frozen=True)
class CliPacConstraints:
    type1: tuple[tuple[int, int, int], ...]  # edge triangles
    type2: tuple[tuple[int, int], ...]  # chordless 2-paths


def _edge(g: Graph, u: int, v: int) -> int:
    return g.edge_index[frozenset((u, v))]


def clipac_constraints(g: Graph) -> CliPacConstraints:
    type1 = tuple(tuple(sorted(c.edges)) for c in all_triangles(g))
    type2 = []
    for v in range(g.n):
        for a, b in combinations(sorted(g.adj[v]), 2):
            if not g.adjacent(a, b):
                type2.append(tuple(sorted((_edge(g, v, a), _edge(g, v, b)))))
    return CliPacConstraints(type1, tuple(sorted(type2)))


def clipac_constraint_list(g: Graph) -> list:
    """Noncovers for chordless 2-paths and three implications per triangle,
    interleaved by edge index."""
    cons = clipac_constraints(g)
    keyed = [(pair, [Noncover(frozenset(pair))]) for pair in cons.type2]
    for tri in cons.type1:
        closures = [
            Closure(frozenset(tri) - {e}, frozenset([e])) for e in tri
        ]
        keyed.append((tri, closures))
    keyed.sort(key=lambda kc: kc[0])
    return [c for _, cs in keyed for c in cs]


def enumerate_clipacs(g: Graph) -> RowFamily:
    return horn.run(g.m, clipac_constraint_list(g))


def connpac_implications(g: Graph) -> list[Implication]:
    out = []
    for cyc in all_chordless_cycles(g):
        for e in sorted(cyc.edges):
            out.append(Implication(cyc.edges - {e}, frozenset([e])))
    return out


def connpac_constraint_list(g: Graph) -> list:
    return normalize_implications(connpac_implications(g))


def enumerate_connpacs(g: Graph) -> RowFamily:
    return horn.run(g.m, connpac_constraint_list(g))


# -- the flat lattice -----------------------------------------------------------


def _check_cover(g: Graph, p: Partition):
    if p.ground != frozenset(range(g.n)):
        raise InvalidPackingError("partition does not cover the vertex set")


def is_connpac(g: Graph, p: Partition) -> bool:
    return p.ground == frozenset(range(g.n)) and all(is_connected(g, b) for b in p.blocks)


def edge_set_of_partition(g: Graph, p: Partition) -> frozenset[int]:
    _check_cover(g, p)
    for b in p.blocks:
        if not is_connected(g, b):
            raise InvalidPackingError(f"block {sorted(g.labels[v] for v in b)} is not connected")
    return frozenset(k for k, (u, v) in enumerate(g.edges) if p.block_of(u) == p.block_of(v))


def partition_of_edge_set(g: Graph, edges) -> Partition:
    return connected_components(g, edges=edges)


def closure_of_edge_set(g: Graph, edges) -> frozenset[int]:
    return edge_set_of_partition(g, partition_of_edge_set(g, edges))


def meet_connpacs(g: Graph, p1: Partition, p2: Partition) -> Partition:
    """Coarsest Conn-Pac finer than both inputs."""
    common = edge_set_of_partition(g, p1) & edge_set_of_partition(g, p2)
    return partition_of_edge_set(g, common)


def _require_connected(g: Graph):
    if not is_connected(g):
        raise DisconnectedGraphError("graph must be connected")


def vertex_hyperplanes(g: Graph) -> list[Partition]:
    """Bipartitions of V into two connected sides; the first side holds vertex 0."""
    _require_connected(g)
    out = []
    rest = list(range(1, g.n))
    for mask in range(1 << len(rest)):
        side = {0} | {v for i, v in enumerate(rest) if mask >> i & 1}
        other = set(range(g.n)) - side
        if other and is_connected(g, side) and is_connected(g, other):
            out.append(Partition.of(side, other))
    return out


def _crossing(g: Graph, p: Partition) -> frozenset[int]:
    return frozenset(k for k, (u, v) in enumerate(g.edges) if p.block_of(u) != p.block_of(v))


def minimal_cutsets(g: Graph) -> list[frozenset[int]]:
    return [_crossing(g, p) for p in vertex_hyperplanes(g)]


def edge_hyperplanes(g: Graph) -> list[frozenset[int]]:
    everything = frozenset(range(g.m))
    return [everything - cut for cut in minimal_cutsets(g)]


def nearest_coarser_connpac(g: Graph, p0: Partition) -> Partition:
    """Finest Conn-Pac coarser than ``p0``: the meet of the hyperplanes above it.

    When ``p0`` has two incomparable minimal Conn-Pac coarsenings that meet is
    not coarser than ``p0`` and NoUniqueCoarseningError is raised.
    """
    _require_connected(g)
    _check_cover(g, p0)
    flat = frozenset(range(g.m))
    for h in vertex_hyperplanes(g):
        if p0.finer_than(h):
            flat &= edge_set_of_partition(g, h)
    result = partition_of_edge_set(g, flat)
    if not p0.finer_than(result):
        raise NoUniqueCoarseningError("no unique finest connected coarsening exists")
    return result
