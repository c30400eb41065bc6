"""Greedy mining of small connected templates in a metagraph.

A template is a connected pattern of typed edges over typed node
variables. Its size is its number of edges. A match maps template nodes
injectively to graph nodes with the same labels and template edges
injectively to graph edges with the same labels and correspondingly
mapped targets (target order is ignored for symmetric labels). Matches
that cover the same set of graph edges are counted once.

Templates grow one typed edge at a time, starting from single edges, by
extending each match with an adjacent graph edge. That extension is the
combinator of the search; templates below ``min_support`` are not grown
further.

Intensity: the covered region of the graph is cast as the result of
combining the template with the list of its bindings, and scored with the
pattern intensity of that decomposition. Description costs count one unit
per node and ``1 + arity`` per edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable

from ..metagraph import SYMMETRIC_LABELS, Metagraph
from ..simplicity.combination import CombinationSystem, Production
from ..simplicity.cosm import pattern_intensity

TemplateEdge = tuple[str, tuple[int, ...]]


@dataclass(frozen=True)
class Template:
    node_labels: tuple[str, ...]
    edges: tuple[TemplateEdge, ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def description_cost(self) -> int:
        return len(self.node_labels) + sum(1 + len(t) for _, t in self.edges)

    def canonical(self) -> tuple:
        return canonical_code(self)

    def to_metagraph(self) -> Metagraph:
        """Template as a small metagraph; node ``i`` is variable ``i``."""
        g = Metagraph()
        ids = [g.add_node(label) for label in self.node_labels]
        for label, targets in self.edges:
            g.add_edge(label, [ids[t] for t in targets])
        return g

    def describe(self) -> str:
        nodes = " ".join(f"${i}:{label}" for i, label in enumerate(self.node_labels))
        edges = " ".join(f"{label}({','.join(f'${t}' for t in targets)})" for label, targets in self.edges)
        return f"{nodes} | {edges}"


def _target_orders(label: str, targets: tuple[int, ...]):
    if label in SYMMETRIC_LABELS:
        return set(permutations(targets))
    return {targets}


def canonical_code(t: Template) -> tuple:
    """Isomorphism-invariant code of a connected template.

    Over every edge ordering (and every target order of symmetric edges),
    nodes are renumbered by first appearance; the smallest resulting
    ``(edges, node_labels)`` is the code.
    """
    best = None
    for order in permutations(range(len(t.edges))):
        stack = [((), {})]
        for e in order:
            label, targets = t.edges[e]
            nxt = []
            for code, numbering in stack:
                for ts in _target_orders(label, targets):
                    num = dict(numbering)
                    for v in ts:
                        if v not in num:
                            num[v] = len(num)
                    mapped = tuple(num[v] for v in ts)
                    if label in SYMMETRIC_LABELS:
                        mapped = tuple(sorted(mapped))
                    nxt.append((code + ((label, mapped),), num))
            stack = nxt
        for code, num in stack:
            labels = [None] * len(num)
            for v, k in num.items():
                labels[k] = t.node_labels[v]
            candidate = (code, tuple(labels))
            if best is None or candidate < best:
                best = candidate
    return best


def template_from_code(code: tuple) -> Template:
    edges, labels = code
    return Template(tuple(labels), tuple(edges))


# -- matching -------------------------------------------------------------------------


def _node_only_edges(g: Metagraph) -> list[int]:
    return [e for e in g.edges() if all(g.atom(t).is_node for t in g.atom(e).targets)]


def _edge_order(t: Template) -> list[int]:
    """Edges in an order where each one touches a node seen earlier."""
    order = [0]
    seen = set(t.edges[0][1])
    remaining = set(range(1, len(t.edges)))
    while remaining:
        touching = [e for e in remaining if seen & set(t.edges[e][1])]
        nxt = min(touching or remaining)
        order.append(nxt)
        seen |= set(t.edges[nxt][1])
        remaining.discard(nxt)
    return order


def find_matches(g: Metagraph, t: Template, usable: set[int] | None = None) -> dict[frozenset, dict[int, int]]:
    """Distinct matched edge sets, each with one node assignment realising it."""
    if usable is None:
        usable = set(_node_only_edges(g))
    by_label: dict[tuple[str, int], list[int]] = {}
    for e in sorted(usable):
        atom = g.atom(e)
        by_label.setdefault((atom.type_label, len(atom.targets)), []).append(e)
    order = _edge_order(t)
    results: dict[frozenset, dict[int, int]] = {}

    def candidates(k: int, node_map: dict[int, int]) -> Iterable[int]:
        label, targets = t.edges[order[k]]
        anchored = [node_map[v] for v in targets if v in node_map]
        if anchored:
            return sorted(
                e
                for e in g.incoming(anchored[0])
                if e in usable and g.atom(e).type_label == label and len(g.atom(e).targets) == len(targets)
            )
        return by_label.get((label, len(targets)), [])

    def extend(k: int, node_map: dict[int, int], used_nodes: set[int], used_edges: list[int]):
        if k == len(order):
            key = frozenset(used_edges)
            if key not in results:
                results[key] = dict(node_map)
            return
        label, targets = t.edges[order[k]]
        for e in candidates(k, node_map):
            if e in used_edges:
                continue
            data_targets = g.atom(e).targets
            orders = set(permutations(data_targets)) if label in SYMMETRIC_LABELS else {data_targets}
            for dts in orders:
                new_map = dict(node_map)
                new_used = set(used_nodes)
                ok = True
                for v, d in zip(targets, dts):
                    if v in new_map:
                        if new_map[v] != d:
                            ok = False
                            break
                    else:
                        if d in new_used or g.atom(d).type_label != t.node_labels[v]:
                            ok = False
                            break
                        new_map[v] = d
                        new_used.add(d)
                if ok:
                    extend(k + 1, new_map, new_used, used_edges + [e])

    extend(0, {}, set(), [])
    return results


def count_matches(g: Metagraph, t: Template) -> int:
    return len(find_matches(g, t))


# -- growth ---------------------------------------------------------------------------


def single_edge_templates(g: Metagraph, usable: Iterable[int]) -> dict[tuple, Template]:
    out = {}
    for e in usable:
        atom = g.atom(e)
        index: dict[int, int] = {}
        for v in atom.targets:
            index.setdefault(v, len(index))
        labels = [""] * len(index)
        for v, k in index.items():
            labels[k] = g.atom(v).type_label
        t = Template(tuple(labels), ((atom.type_label, tuple(index[v] for v in atom.targets)),))
        code = canonical_code(t)
        out.setdefault(code, template_from_code(code))
    return out


def extend_template(g: Metagraph, t: Template, node_map: dict[int, int], used_edges: frozenset, usable: set[int]):
    """Templates obtained by adding one graph edge adjacent to a match."""
    inverse = {d: v for v, d in node_map.items()}
    out = {}
    for d in sorted(inverse):
        for e in sorted(g.incoming(d)):
            if e in used_edges or e not in usable:
                continue
            atom = g.atom(e)
            labels = list(t.node_labels)
            local = dict(inverse)
            for v in atom.targets:
                if v not in local:
                    local[v] = len(labels)
                    labels.append(g.atom(v).type_label)
            new_edge = (atom.type_label, tuple(local[v] for v in atom.targets))
            grown = Template(tuple(labels), t.edges + (new_edge,))
            code = canonical_code(grown)
            out.setdefault(code, template_from_code(code))
    return out


# -- scoring --------------------------------------------------------------------------


@dataclass(frozen=True)
class MinedPattern:
    template: Template
    match_count: int
    intensity: float
    code: tuple


def template_intensity(g: Metagraph, t: Template, matches: dict[frozenset, dict[int, int]]) -> float:
    """Intensity of ``region = template * bindings`` in a three-entity system."""
    covered_edges = set().union(*matches) if matches else set()
    covered_nodes = {v for e in covered_edges for v in g.atom(e).targets}
    region = len(covered_nodes) + sum(1 + len(g.atom(e).targets) for e in covered_edges)
    bindings = len(matches) * len(t.node_labels)
    system = CombinationSystem(
        ("template", "bindings", "region"),
        {(0, "template", "bindings"): Production(("region",), 1.0)},
    )
    base = {"template": float(t.description_cost()), "bindings": float(bindings), "region": float(region)}
    return pattern_intensity(system, base, "region", "template", "bindings", 0)


def mine_patterns(
    g: Metagraph,
    max_template_size: int = 3,
    min_support: int = 2,
    min_intensity: float = 0.0,
) -> list[MinedPattern]:
    """Frequent connected templates with at most ``max_template_size`` edges.

    Results are sorted by intensity, then match count (both descending),
    then canonical code.
    """
    if not 1 <= max_template_size <= 4:
        raise ValueError("max_template_size must lie between 1 and 4")
    usable = set(_node_only_edges(g))
    frontier = single_edge_templates(g, sorted(usable))
    found: list[MinedPattern] = []
    seen: set = set(frontier)
    size = 1
    while frontier and size <= max_template_size:
        nxt: dict[tuple, Template] = {}
        for code in sorted(frontier):
            t = frontier[code]
            matches = find_matches(g, t, usable)
            if len(matches) < min_support:
                continue
            intensity = template_intensity(g, t, matches)
            if intensity >= min_intensity:
                found.append(MinedPattern(t, len(matches), intensity, code))
            if size < max_template_size:
                for edge_set, node_map in matches.items():
                    for c2, t2 in extend_template(g, t, node_map, edge_set, usable).items():
                        if c2 not in seen:
                            seen.add(c2)
                            nxt[c2] = t2
        frontier = nxt
        size += 1
    found.sort(key=lambda m: (-m.intensity, -m.match_count, m.code))
    return found


def pattern_codes(patterns: Iterable[MinedPattern]) -> set:
    return {p.code for p in patterns}
