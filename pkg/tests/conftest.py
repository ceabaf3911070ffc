import random
from pathlib import Path

import pytest

from wildenum.graph import Graph, parse_graph
from wildenum.rows import family_expand, set_of

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# four sets over positions 1..9 whose noncovers number 431
NONCOVER_SETS = [{1, 2, 4, 5}, {1, 2, 4, 7, 8, 9}, {2, 5, 8, 9}, {2, 3, 6, 9}]

G3_EDGES = [
    (1, 2), (1, 4), (2, 3), (2, 5), (2, 9), (3, 6), (4, 5),
    (4, 7), (5, 7), (5, 8), (6, 9), (7, 8), (8, 9),
]
G3_CYCLES = [{1, 2, 4, 5}, {1, 2, 4, 7, 8, 9}, {2, 5, 8, 9}, {2, 3, 6, 9}, {4, 5, 7}, {5, 7, 8}]

# the fourteen triangles found by the ordered neighbourhood scan on an 8-vertex graph
TRIANGLES_8 = [
    "rst", "rsu", "rtu", "rtx", "rux", "rxy", "stu",
    "tuv", "tuw", "tux", "tvw", "twx", "uvw", "uwx",
]


def zero_based(sets):
    return [frozenset(x - 1 for x in s) for s in sets]


def members(fam):
    return {set_of(x) for x in family_expand(fam)}


def random_graph(rng: random.Random, max_n: int = 8) -> Graph:
    n = rng.randint(1, max_n)
    p = rng.choice([0.2, 0.35, 0.5, 0.7])
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
    return Graph(list(range(1, n + 1)), edges)


def graph_corpus(count: int = 100, seed: int = 2024, max_n: int = 8) -> list[Graph]:
    rng = random.Random(seed)
    return [random_graph(rng, max_n) for _ in range(count)]


@pytest.fixture(scope="session")
def g3() -> Graph:
    return parse_graph((FIXTURES / "g3.graph").read_text())


@pytest.fixture(scope="session")
def corpus() -> list[Graph]:
    return graph_corpus()
