"""Compressed enumeration of set families as disjoint wildcard rows."""

from .graph import Graph, Partition, parse_graph
from .horn import HornCNF, Implication, SetFamily, enumerate_horn_models, enumerate_noncovers
from .rows import RowFamily, WildcardRow, family_cardinality, row_cardinality

__all__ = [
    "Graph",
    "HornCNF",
    "Implication",
    "Partition",
    "RowFamily",
    "SetFamily",
    "WildcardRow",
    "enumerate_horn_models",
    "enumerate_noncovers",
    "family_cardinality",
    "parse_graph",
    "row_cardinality",
]
