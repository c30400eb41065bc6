"""Typed metagraph store.

Atoms are nodes or edges. An edge has an ordered list of targets, and a
target may itself be an edge, so links between links are representable.
Every atom carries an optional evidence truth value plus short- and
long-term importance.

Reads may be shared between threads; any mutation needs exclusive access.
Everything returned by a query is a snapshot (tuples, frozensets, frozen
atoms), never a live view of the store.
"""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from ..errors import ArityViolation, AtomInUse, DanglingTarget, UnknownAtom, UnknownNode
from ..logic import EvidenceTV

NODE = "node"
EDGE = "edge"

RESERVED_LABELS = frozenset(
    {
        "Similarity",
        "Inheritance",
        "Member",
        "Concept",
        "Observation",
        "TemporalConcept",
        "Execution",
        "PredictiveImplication",
        "SequentialAnd",
        "Xor",
        "And",
        "Or",
        "Not",
    }
)

# Target order is irrelevant for these; targets are stored ascending.
SYMMETRIC_LABELS = frozenset({"Similarity"})

_LABEL_RE = re.compile(r"^[^\s()#=]+$")


@dataclass(frozen=True)
class Atom:
    id: int
    kind: str
    type_label: str
    targets: tuple[int, ...] = ()
    tv: EvidenceTV | None = None
    sti: float = 0.0
    lti: float = 0.0

    @property
    def is_node(self) -> bool:
        return self.kind == NODE

    @property
    def is_edge(self) -> bool:
        return self.kind == EDGE


class Subgraph(NamedTuple):
    nodes: frozenset[int]
    edges: frozenset[int]


class Metagraph:
    """In-memory typed metagraph with an incidence index.

    >>> g = Metagraph()
    >>> a, b = g.add_node("Observation"), g.add_node("Observation")
    >>> e = g.add_edge("Similarity", [b, a])
    >>> g.atom(e).targets
    (0, 1)
    """

    def __init__(self):
        self._atoms: dict[int, Atom] = {}
        self._incoming: dict[int, set[int]] = {}
        self._next_id = 0

    # -- mutation ---------------------------------------------------------

    def add_atom(
        self,
        kind: str,
        type_label: str,
        targets: Iterable[int] = (),
        tv: EvidenceTV | None = None,
        sti: float = 0.0,
        lti: float = 0.0,
    ) -> int:
        targets = tuple(int(t) for t in targets)
        if kind not in (NODE, EDGE):
            raise ValueError(f"unknown atom kind {kind!r}")
        if not isinstance(type_label, str) or not _LABEL_RE.match(type_label):
            raise ValueError(f"invalid type label {type_label!r}")
        if kind == NODE and targets:
            raise ArityViolation("nodes cannot have targets")
        if kind == EDGE and not targets:
            raise ArityViolation("edges need at least one target")
        missing = [t for t in targets if t not in self._atoms]
        if missing:
            raise DanglingTarget(f"targets {missing} do not exist")
        if tv is not None and not isinstance(tv, EvidenceTV):
            raise TypeError("tv must be an EvidenceTV")
        if type_label in SYMMETRIC_LABELS:
            targets = tuple(sorted(targets))
        atom_id = self._next_id
        self._next_id += 1
        self._atoms[atom_id] = Atom(atom_id, kind, type_label, targets, tv, float(sti), float(lti))
        self._incoming[atom_id] = set()
        for t in set(targets):
            self._incoming[t].add(atom_id)
        return atom_id

    def add_node(self, type_label: str, **annotations) -> int:
        return self.add_atom(NODE, type_label, (), **annotations)

    def add_edge(self, type_label: str, targets: Iterable[int], **annotations) -> int:
        return self.add_atom(EDGE, type_label, targets, **annotations)

    def remove_atom(self, atom_id: int) -> None:
        atom = self.atom(atom_id)
        if self._incoming[atom_id]:
            raise AtomInUse(f"atom {atom_id} is targeted by edges {sorted(self._incoming[atom_id])}")
        for t in set(atom.targets):
            self._incoming[t].discard(atom_id)
        del self._atoms[atom_id]
        del self._incoming[atom_id]

    def set_importance(self, atom_id: int, sti: float | None = None, lti: float | None = None) -> None:
        atom = self.atom(atom_id)
        changes = {}
        if sti is not None:
            changes["sti"] = float(sti)
        if lti is not None:
            changes["lti"] = float(lti)
        self._atoms[atom_id] = dataclasses.replace(atom, **changes)

    def set_tv(self, atom_id: int, tv: EvidenceTV | None) -> None:
        self._atoms[atom_id] = dataclasses.replace(self.atom(atom_id), tv=tv)

    # -- queries ----------------------------------------------------------

    def atom(self, atom_id: int) -> Atom:
        try:
            return self._atoms[atom_id]
        except KeyError:
            raise UnknownAtom(f"no atom {atom_id}") from None

    __getitem__ = atom

    def __contains__(self, atom_id) -> bool:
        return atom_id in self._atoms

    def __len__(self) -> int:
        return len(self._atoms)

    def __iter__(self) -> Iterator[Atom]:
        for atom_id in sorted(self._atoms):
            yield self._atoms[atom_id]

    def atom_ids(self) -> list[int]:
        return sorted(self._atoms)

    def nodes(self) -> list[int]:
        return [a.id for a in self if a.kind == NODE]

    def edges(self) -> list[int]:
        return [a.id for a in self if a.kind == EDGE]

    def nodes_of_type(self, type_label: str) -> list[int]:
        return [a.id for a in self if a.kind == NODE and a.type_label == type_label]

    def incoming(self, atom_id: int) -> frozenset[int]:
        """Edges that list ``atom_id`` among their targets."""
        self.atom(atom_id)
        return frozenset(self._incoming[atom_id])

    def require_node(self, atom_id: int) -> Atom:
        atom = self._atoms.get(atom_id)
        if atom is None or atom.kind != NODE:
            raise UnknownNode(f"{atom_id} is not a node of this graph")
        return atom

    def neighbors(self, node_id: int) -> frozenset[int]:
        """Nodes sharing at least one edge with ``node_id`` (excluding itself)."""
        self.require_node(node_id)
        out = set()
        for e in self._incoming[node_id]:
            for t in self._atoms[e].targets:
                if t != node_id and self._atoms[t].kind == NODE:
                    out.add(t)
        return frozenset(out)

    def stats(self) -> dict[str, int]:
        counts: dict[str, int] = {"atoms": len(self), "nodes": 0, "edges": 0, "edges_on_edges": 0}
        for a in self:
            counts["nodes" if a.is_node else "edges"] += 1
            if a.is_edge and any(self._atoms[t].is_edge for t in a.targets):
                counts["edges_on_edges"] += 1
        return counts

    def label_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for a in self:
            counts[a.type_label] = counts.get(a.type_label, 0) + 1
        return dict(sorted(counts.items()))

    def check_integrity(self) -> None:
        """Assert the store's internal invariants; used by tests."""
        for a in self._atoms.values():
            assert (a.kind == NODE) == (len(a.targets) == 0)
            for t in a.targets:
                assert t in self._atoms, f"dangling target {t} in {a.id}"
                assert a.id in self._incoming[t]
        for target, edges in self._incoming.items():
            for e in edges:
                assert target in self._atoms[e].targets

    def copy(self) -> "Metagraph":
        other = Metagraph()
        other._atoms = dict(self._atoms)
        other._incoming = {k: set(v) for k, v in self._incoming.items()}
        other._next_id = self._next_id
        return other

    def structure(self) -> tuple:
        """Id-free description: atoms in id order, targets as ranks.

        Two graphs with equal ``structure()`` are identical up to renaming of
        atom ids by an order-preserving map.
        """
        rank = {atom_id: i for i, atom_id in enumerate(sorted(self._atoms))}
        return tuple(
            (a.kind, a.type_label, tuple(rank[t] for t in a.targets), a.tv, a.sti, a.lti) for a in self
        )

    def same_structure(self, other: "Metagraph") -> bool:
        return self.structure() == other.structure()

    def __repr__(self) -> str:
        s = self.stats()
        return f"Metagraph(nodes={s['nodes']}, edges={s['edges']})"


# -- subgraph operations ------------------------------------------------------


def induced_subgraph(g: Metagraph, nodes: Iterable[int]) -> Subgraph:
    """``nodes`` plus every edge whose targets lie (recursively) inside them."""
    keep = frozenset(nodes)
    for n in keep:
        g.require_node(n)
    included: set[int] = set(keep)
    edges = set()
    # ids grow monotonically, so targets always precede the edges using them
    for a in g:
        if a.is_edge and all(t in included for t in a.targets):
            included.add(a.id)
            edges.add(a.id)
    return Subgraph(keep, frozenset(edges))


def subgraph_negation(g: Metagraph, nodes: Iterable[int]) -> Subgraph:
    """Intuitionistic complement of a node set.

    Returns the nodes outside ``nodes`` together with the edges lying
    entirely among them. Edges crossing between the set and its complement
    belong to neither side, which is why excluded middle fails.
    """
    s = frozenset(nodes)
    for n in s:
        g.require_node(n)
    return induced_subgraph(g, set(g.nodes()) - s)


def star(g: Metagraph, node_id: int) -> frozenset[int]:
    """A node together with every node directly linked to it."""
    return g.neighbors(node_id) | {node_id}

