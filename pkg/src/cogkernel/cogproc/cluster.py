"""Agglomerative clustering as a greedy decision process.

The state is a partition of the points, an action merges two clusters and
its reward is minus the within-cluster distance the merge adds, so the
greedy executor at temperature 0 performs the cheapest merge each stage.
The total reward is therefore minus the sum of within-cluster pairwise
distances of the final partition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..decision.dds import DDSProblem, run_greedy
from ..errors import EmptyInput
from ..metagraph import Metagraph

STOP = "stop"


@dataclass(frozen=True)
class ClusterModel:
    assignments: dict  # point node id -> cluster index
    clusters: tuple  # tuples of point indices, ordered by first member
    concept_atoms: tuple  # Concept node ids then Member edge ids
    objective: float  # minus the within-cluster pairwise distance sum


def within_cost(clusters, dist: np.ndarray) -> float:
    total = 0.0
    for c in clusters:
        idx = list(c)
        total += dist[np.ix_(idx, idx)].sum() / 2.0
    return float(total)


def clustering_problem(points: np.ndarray, k: int | None = None, stop_distance: float | None = None) -> DDSProblem:
    n = len(points)
    diff = points[:, None, :] - points[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=-1))
    start = tuple((i,) for i in range(n))

    def merge_cost(s, a):
        i, j = a
        return float(dist[np.ix_(s[i], s[j])].sum())

    def merges(s):
        return [(i, j) for i in range(len(s)) for j in range(i + 1, len(s))]

    def actions(t, s):
        acts = merges(s)
        if stop_distance is not None:
            acts = [a for a in acts if merge_cost(s, a) <= stop_distance]
        return acts or [STOP]

    def reward(t, s, a):
        return 0.0 if a == STOP else -merge_cost(s, a)

    def outcomes(t, s, a):
        if a == STOP:
            return [(1.0, s)]
        i, j = a
        merged = tuple(sorted(s[i] + s[j]))
        rest = [c for m, c in enumerate(s) if m not in (i, j)]
        return [(1.0, tuple(sorted(rest + [merged])))]

    horizon = max(1, n - (k if k is not None else 1))
    return DDSProblem(horizon, start, actions, reward, outcomes, name="cluster")


def agglomerative_cluster(
    points,
    k: int | None = None,
    stop_distance: float | None = None,
    g: Metagraph | None = None,
    point_nodes: list[int] | None = None,
) -> ClusterModel:
    """Merge clusters greedily down to ``k`` clusters (or while a merge costs at most ``stop_distance``).

    When ``g`` is given, each cluster becomes a ``Concept`` node with a
    ``Member`` edge from every point node. Point nodes default to fresh
    ``Observation`` nodes, one per point.
    """
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise EmptyInput("no points to cluster")
    if pts.ndim == 1:
        pts = pts[:, None]
    n = len(pts)
    if k is None and stop_distance is None:
        raise ValueError("give k or stop_distance")
    if k is not None and not 1 <= k <= n:
        raise ValueError("k must lie between 1 and the number of points")
    if k is not None and k == n:
        clusters = tuple((i,) for i in range(n))
    else:
        traj = run_greedy(clustering_problem(pts, k, stop_distance), seed=0, temperature=0)
        clusters = traj.states[-1]
    clusters = tuple(sorted(clusters, key=lambda c: c[0]))
    diff = pts[:, None, :] - pts[None, :, :]
    objective = -within_cost(clusters, np.sqrt((diff**2).sum(axis=-1)))

    assignments: dict = {}
    atoms: list[int] = []
    if g is not None:
        if point_nodes is None:
            point_nodes = [g.add_node("Observation") for _ in range(n)]
        elif len(point_nodes) != n:
            raise ValueError("need one node per point")
        concepts = [g.add_node("Concept") for _ in clusters]
        members = []
        for ci, c in enumerate(clusters):
            for i in c:
                members.append(g.add_edge("Member", [point_nodes[i], concepts[ci]]))
                assignments[point_nodes[i]] = ci
        atoms = concepts + members
    else:
        for ci, c in enumerate(clusters):
            for i in c:
                assignments[i] = ci
    return ClusterModel(assignments, clusters, tuple(atoms), objective)
