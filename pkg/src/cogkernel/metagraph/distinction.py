"""Distinction graphs and graphtropy.

A distinction graph links two observations when an observer *cannot* tell
them apart. Graphtropy is the share of possible pairwise distinctions the
observer does make; on an equivalence relation it coincides with the
logical entropy ``1 - sum(p_i**2)`` of the induced partition (in the
``ordered_with_diagonal`` mode).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable

from ..errors import ObservationSetMismatch, TooFewObservations, UnknownNode
from ..logic import evidence_to_simple
from .store import Metagraph

DISTINCT_PAIRS = "distinct_pairs"
ORDERED_WITH_DIAGONAL = "ordered_with_diagonal"
MODES = (DISTINCT_PAIRS, ORDERED_WITH_DIAGONAL)


def _pair(a, b) -> frozenset:
    return frozenset((a, b))


@dataclass(frozen=True)
class DistinctionGraph:
    """Observations plus the symmetric "indistinguishable" relation.

    Pairs are stored as two-element frozensets, so symmetry holds by
    construction. Self-links carry no information and are dropped.
    """

    observations: frozenset
    indistinct: frozenset = frozenset()

    @classmethod
    def from_pairs(cls, observations: Iterable[Hashable], pairs: Iterable[tuple] = ()) -> "DistinctionGraph":
        obs = frozenset(observations)
        links = set()
        for a, b in pairs:
            if a not in obs or b not in obs:
                raise UnknownNode(f"link ({a!r}, {b!r}) mentions an unknown observation")
            if a != b:
                links.add(_pair(a, b))
        return cls(obs, frozenset(links))

    @classmethod
    def from_partition(cls, blocks: Iterable[Iterable[Hashable]]) -> "DistinctionGraph":
        """Equivalence-relation graph: observations in a block are linked."""
        blocks = [list(b) for b in blocks]
        obs = [o for b in blocks for o in b]
        if len(set(obs)) != len(obs):
            raise ValueError("partition blocks overlap")
        pairs = [(a, b) for block in blocks for a, b in combinations(block, 2)]
        return cls.from_pairs(obs, pairs)

    def linked(self, a, b) -> bool:
        return a == b or _pair(a, b) in self.indistinct

    def with_link(self, a, b) -> "DistinctionGraph":
        return DistinctionGraph.from_pairs(self.observations, [tuple(p) for p in self.indistinct] + [(a, b)])

    def __len__(self) -> int:
        return len(self.observations)


def graphtropy(dg: DistinctionGraph, mode: str = DISTINCT_PAIRS, exact: bool = False):
    """Fraction of possible binary distinctions that ``dg`` makes.

    ``distinct_pairs`` counts unordered pairs ``a != b`` without a link,
    over ``C(n, 2)``. ``ordered_with_diagonal`` counts ordered pairs over
    ``n**2`` with every observation indistinguishable from itself.
    With ``exact=True`` a :class:`~fractions.Fraction` is returned.
    """
    n = len(dg.observations)
    links = len(dg.indistinct)
    if mode == DISTINCT_PAIRS:
        if n < 2:
            raise TooFewObservations("distinct_pairs graphtropy needs at least two observations")
        total = n * (n - 1) // 2
        value = Fraction(total - links, total)
    elif mode == ORDERED_WITH_DIAGONAL:
        if n < 1:
            raise TooFewObservations("graphtropy needs at least one observation")
        value = Fraction(n * n - n - 2 * links, n * n)
    else:
        raise ValueError(f"unknown graphtropy mode {mode!r}")
    return value if exact else float(value)


def conditional_graphtropy(dg1: DistinctionGraph, dg2: DistinctionGraph, exact: bool = False):
    """Share of the pairs ``dg2`` leaves undistinguished that ``dg1`` separates.

    Returns 0 when ``dg2`` already distinguishes every pair.
    """
    if dg1.observations != dg2.observations:
        raise ObservationSetMismatch("distinction graphs are over different observations")
    # pairs not distinguished by dg2 are exactly its links
    denominator = len(dg2.indistinct)
    numerator = len(dg2.indistinct - dg1.indistinct)
    value = Fraction(numerator, denominator) if denominator else Fraction(0)
    return value if exact else float(value)


def distinction_view(
    g: Metagraph,
    observations: Iterable[int] | None = None,
    threshold: float = 0.5,
    link_label: str = "Similarity",
) -> DistinctionGraph:
    """Crisp distinction graph read off a metagraph.

    Observations default to the ``Observation`` nodes (all nodes when there
    are none). Every ``Similarity`` edge among observations is a link when
    it has no truth value or its strength exceeds ``threshold``; an edge with
    more than two targets links all its targets pairwise.
    """
    if observations is None:
        obs = g.nodes_of_type("Observation") or g.nodes()
    else:
        obs = list(observations)
        for o in obs:
            g.require_node(o)
    obs_set = frozenset(obs)
    pairs = []
    for e in g.edges():
        atom = g.atom(e)
        if atom.type_label != link_label:
            continue
        if not all(t in obs_set for t in atom.targets):
            continue
        if atom.tv is not None and evidence_to_simple(atom.tv).s <= threshold:
            continue
        pairs.extend(combinations(atom.targets, 2))
    return DistinctionGraph.from_pairs(obs_set, pairs)
