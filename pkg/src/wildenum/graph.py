"""Simple graphs, partitions of their vertex sets, and path/cycle generators.

Vertices are stored as indices 0..n-1 in canonical order; ``Graph.labels``
maps them back to the user's labels.  A path is a tuple of vertex indices.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Sequence


def _natural_order(labels: Iterable[Hashable]) -> list:
    labels = list(dict.fromkeys(labels))
    if all(isinstance(x, int) for x in labels):
        return sorted(labels)
    return sorted(labels, key=str)


class Graph:
    def __init__(self, vertices: Sequence[Hashable], edges: Iterable[tuple[Hashable, Hashable]]):
        self.labels = list(vertices)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate vertex labels")
        self.index = {v: i for i, v in enumerate(self.labels)}
        adj: list[set[int]] = [set() for _ in self.labels]
        self.edges: list[tuple[int, int]] = []
        for u, v in edges:
            i, j = self.index[u], self.index[v]
            if i == j:
                raise ValueError(f"self-loop at {u!r}")
            if j in adj[i]:
                continue
            adj[i].add(j)
            adj[j].add(i)
            self.edges.append((min(i, j), max(i, j)))
        self.adj = [frozenset(a) for a in adj]
        self.edge_index = {frozenset(e): k for k, e in enumerate(self.edges)}

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[Hashable, Hashable]], vertices: Iterable[Hashable] = ()):
        edges = list(edges)
        labels = _natural_order([*vertices, *(x for e in edges for x in e)])
        return cls(labels, edges)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def complement(self) -> Graph:
        pairs = [
            (self.labels[u], self.labels[v])
            for u, v in combinations(range(self.n), 2)
            if v not in self.adj[u]
        ]
        return Graph(self.labels, pairs)

    def edge_label(self, k: int) -> str:
        u, v = self.edges[k]
        return f"{self.labels[u]}-{self.labels[v]}"

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def path_graph(n: int) -> Graph:
    return Graph(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)])


def complete_graph(n: int) -> Graph:
    return Graph(range(1, n + 1), combinations(range(1, n + 1), 2))


def empty_graph(n: int) -> Graph:
    return Graph(range(1, n + 1), [])


# -- file format ----------------------------------------------------------------


class GraphParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def parse_graph(text: str) -> Graph:
    """One edge ``u v`` per line; a lone ``v`` declares a vertex; ``#`` comments.

    Labels are integers when every label in the file is one, strings otherwise.
    """
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split("#", 1)[0].split()
        if not parts:
            continue
        if len(parts) == 1:
            vertices.append(parts[0])
        elif len(parts) == 2:
            if parts[0] == parts[1]:
                raise GraphParseError(lineno, f"self-loop at {parts[0]!r}")
            edges.append((parts[0], parts[1]))
        else:
            raise GraphParseError(lineno, f"expected 'u v' or 'v', got {raw.strip()!r}")
    tokens = vertices + [x for e in edges for x in e]
    if tokens and all(_is_int(x) for x in tokens):
        vertices = [int(x) for x in vertices]
        edges = [(int(u), int(v)) for u, v in edges]
    return Graph.from_edges(edges, vertices)


def _is_int(token: str) -> bool:
    try:
        int(token)
    except ValueError:
        return False
    return True


def format_graph(g: Graph) -> str:
    lines = [f"{g.labels[u]} {g.labels[v]}" for u, v in g.edges]
    lines += [str(g.labels[v]) for v in range(g.n) if not g.adj[v]]
    return "\n".join(lines) + "\n"


# -- partitions ---------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks, sorted by least element."""

    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=min))
        if any(not b for b in blocks):
            raise ValueError("empty block")
        if sum(map(len, blocks)) != len(frozenset().union(*blocks)):
            raise ValueError("blocks overlap")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> Partition:
        return cls(tuple(frozenset(b) for b in blocks))

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(tuple(frozenset([v]) for v in range(n)))

    @property
    def ground(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, v: int) -> frozenset[int]:
        for b in self.blocks:
            if v in b:
                return b
        raise KeyError(v)

    def finer_than(self, other: Partition) -> bool:
        """Every block of ``self`` lies inside a block of ``other``."""
        return all(any(b <= o for o in other.blocks) for b in self.blocks)


def format_partition(g: Graph, p: Partition) -> str:
    return "|".join(",".join(str(g.labels[v]) for v in sorted(b)) for b in p.blocks)


def parse_partition(g: Graph, text: str) -> Partition:
    blocks = []
    for chunk in text.strip().split("|"):
        labels = [x.strip() for x in chunk.split(",") if x.strip()]
        try:
            blocks.append(frozenset(g.index[_coerce(g, x)] for x in labels))
        except KeyError as exc:
            raise ValueError(f"unknown vertex {exc.args[0]!r}") from None
    p = Partition(tuple(blocks))
    if p.ground != frozenset(range(g.n)):
        raise ValueError("partition does not cover the vertex set")
    return p


def _coerce(g: Graph, label: str):
    if label in g.index:
        return label
    try:
        return int(label)
    except ValueError:
        return label


# -- distances and components -------------------------------------------------


def bfs_distances(g: Graph, source: int) -> list:
    dist = [math.inf] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] == math.inf:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance_matrix(g: Graph) -> list[list]:
    return [bfs_distances(g, s) for s in range(g.n)]


def connected_components(
    g: Graph,
    vertices: Iterable[int] | None = None,
    edges: Iterable[int] | None = None,
) -> Partition:
    """Components of G[vertices], or of (V, edges) when an edge subset is given."""
    if vertices is not None and edges is not None:
        raise ValueError("restrict to vertices or to edges, not both")
    if edges is not None:
        nodes = set(range(g.n))
        nbr: dict[int, set[int]] = {v: set() for v in nodes}
        for k in edges:
            u, v = g.edges[k]
            nbr[u].add(v)
            nbr[v].add(u)
    else:
        nodes = set(range(g.n)) if vertices is None else set(vertices)
        nbr = {v: g.adj[v] & nodes for v in nodes}
    blocks, seen = [], set()
    for v in sorted(nodes):
        if v in seen:
            continue
        comp, stack = {v}, [v]
        while stack:
            for w in nbr[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        blocks.append(frozenset(comp))
    return Partition(tuple(blocks))


def is_connected(g: Graph, vertices: Iterable[int] | None = None) -> bool:
    return len(connected_components(g, vertices)) <= 1


# -- chordless paths, geodesics, chordless cycles -----------------------------


def _chordless_walk(g: Graph):
    """Yield ``(path, closes)`` level by level over directed paths.

    ``closes`` is False for chordless paths.  It is True for paths that are
    chordless except that their two ends are adjacent; those close up into
    chordless cycles and are not extended further.
    """
    level = []
    for u in range(g.n):
        for v in sorted(g.adj[u]):
            level.append(((u, v), frozenset((u, v))))
    while level:
        nxt = []
        for path, blocked in level:
            yield path, False
            first, last = path[0], path[-1]
            # a new vertex may touch neither the path's interior nor (unless
            # it closes a cycle) the first vertex
            for w in sorted(g.adj[last] - blocked):
                if len(path) >= 2 and w in g.adj[first]:
                    yield path + (w,), True
                else:
                    nxt.append((path + (w,), blocked | g.adj[last] | {w}))
        level = nxt


def _directed_chordless(g: Graph):
    return (p for p, closes in _chordless_walk(g) if not closes)


def _directed_geodesics(g: Graph, dist: list[list]):
    level = [(u, v) for u in range(g.n) for v in sorted(g.adj[u])]
    while level:
        nxt = []
        for path in level:
            yield path
            s, k = path[0], len(path)
            for w in sorted(g.adj[path[-1]]):
                if dist[s][w] == k:
                    nxt.append(path + (w,))
        level = nxt


def all_chordless_paths(g: Graph) -> list[tuple[int, ...]]:
    """Every chordless path with at least one edge, stored once (last > first)."""
    return [p for p in _directed_chordless(g) if p[-1] > p[0]]


def all_geodesics(g: Graph) -> list[tuple[int, ...]]:
    return [p for p in _directed_geodesics(g, distance_matrix(g)) if p[-1] > p[0]]


def paths_by_endpoints(paths: Iterable[tuple[int, ...]]) -> dict[tuple[int, int], list]:
    out: dict[tuple[int, int], list] = {}
    for p in paths:
        out.setdefault((p[0], p[-1]), []).append(p)
    return out


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[int, ...]  # sorted
    edges: frozenset[int]  # edge indices

    def __len__(self) -> int:
        return len(self.vertices)


def _cycle(g: Graph, verts: Iterable[int]) -> Cycle:
    vs = tuple(sorted(verts))
    es = frozenset(g.edge_index[frozenset((u, v))] for u, v in combinations(vs, 2) if g.adjacent(u, v))
    return Cycle(vs, es)


def all_chordless_cycles(g: Graph) -> list[Cycle]:
    """Chordless cycles, each once, keyed by sorted vertex set."""
    found: dict[tuple[int, ...], None] = {}
    for p, closes in _chordless_walk(g):
        if closes:
            found.setdefault(tuple(sorted(p)))
    return [_cycle(g, vs) for vs in sorted(found, key=lambda c: (len(c), c))]


def all_triangles(g: Graph) -> list[Cycle]:
    """Scan vertices in order; pairs of adjacent later neighbours close a triangle."""
    out = []
    for v in range(g.n):
        later = sorted(w for w in g.adj[v] if w > v)
        for a, b in combinations(later, 2):
            if g.adjacent(a, b):
                out.append(_cycle(g, (v, a, b)))
    return out
