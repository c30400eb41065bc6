from .distinction import (
    DISTINCT_PAIRS,
    MODES,
    ORDERED_WITH_DIAGONAL,
    DistinctionGraph,
    conditional_graphtropy,
    distinction_view,
    graphtropy,
)
from .store import (
    EDGE,
    NODE,
    RESERVED_LABELS,
    SYMMETRIC_LABELS,
    Atom,
    Metagraph,
    Subgraph,
    induced_subgraph,
    star,
    subgraph_negation,
)
from .textio import HEADER, dump, dumps, load, loads, read_graph, write_graph

__all__ = [
    "Atom",
    "DISTINCT_PAIRS",
    "DistinctionGraph",
    "EDGE",
    "HEADER",
    "MODES",
    "Metagraph",
    "NODE",
    "ORDERED_WITH_DIAGONAL",
    "RESERVED_LABELS",
    "SYMMETRIC_LABELS",
    "Subgraph",
    "conditional_graphtropy",
    "distinction_view",
    "dump",
    "dumps",
    "graphtropy",
    "induced_subgraph",
    "load",
    "loads",
    "read_graph",
    "star",
    "subgraph_negation",
    "write_graph",
]
