"""Attention spreading over the node neighbourhood structure.

Each iteration every node passes ``spread_fraction`` of its short-term
importance (STI) to its neighbours in equal shares. The total is then
rescaled to its pre-spread value, STI decays by ``decay``, and long-term
importance (LTI) tracks STI as an exponential moving average with rate
``decay``. Isolated nodes keep their STI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..decision.dds import DDSProblem
from ..metagraph import Metagraph


@dataclass(frozen=True)
class EcanParams:
    spread_fraction: float = 0.5
    decay: float = 0.0
    iterations: int = 1
    focus_threshold: float = 0.0

    def __post_init__(self):
        if not 0 < self.spread_fraction <= 1:
            raise ValueError("spread_fraction must lie in (0, 1]")
        if not 0 <= self.decay < 1:
            raise ValueError("decay must lie in [0, 1)")
        if self.iterations < 0:
            raise ValueError("iterations must be non-negative")


def spread_matrix(g: Metagraph, nodes: list[int]) -> np.ndarray:
    """Column-stochastic transfer matrix: ``M[j, i]`` is the share of node i's outflow reaching j."""
    index = {n: k for k, n in enumerate(nodes)}
    m = np.zeros((len(nodes), len(nodes)))
    for n in nodes:
        nbrs = sorted(g.neighbors(n))
        for v in nbrs:
            m[index[v], index[n]] = 1.0 / len(nbrs)
    return m


def spread_once(sti: np.ndarray, transfer: np.ndarray, has_neighbors: np.ndarray, params: EcanParams) -> np.ndarray:
    total = math.fsum(sti)
    sent = params.spread_fraction * sti * has_neighbors
    new = sti - sent + transfer @ sent
    after = math.fsum(new)
    if after != 0:
        new = new * (total / after)
    return new * (1.0 - params.decay)


def ecan_spread(g: Metagraph, params: EcanParams, write: bool = True) -> tuple[dict[int, float], dict[int, float]]:
    """Run ``params.iterations`` spreading rounds over the graph's nodes.

    Returns the new STI and LTI per node and, when ``write`` is set, stores
    them on the atoms.
    """
    for a in g:
        if not (math.isfinite(a.sti) and math.isfinite(a.lti)):
            raise ValueError(f"atom {a.id} has non-finite importance")
    nodes = g.nodes()
    transfer = spread_matrix(g, nodes)
    has_neighbors = (transfer.sum(axis=0) > 0).astype(float)
    sti = np.array([g.atom(n).sti for n in nodes], dtype=float)
    lti = np.array([g.atom(n).lti for n in nodes], dtype=float)
    for _ in range(params.iterations):
        sti = spread_once(sti, transfer, has_neighbors, params)
        lti = (1.0 - params.decay) * lti + params.decay * sti
    sti_map = {n: float(v) for n, v in zip(nodes, sti)}
    lti_map = {n: float(v) for n, v in zip(nodes, lti)}
    if write:
        for n in nodes:
            g.set_importance(n, sti=sti_map[n], lti=lti_map[n])
    return sti_map, lti_map


def attentional_focus(g: Metagraph, threshold: float) -> list[int]:
    """Atoms with STI at or above ``threshold``, highest first (ties by id)."""
    chosen = [a for a in g if a.sti >= threshold]
    return [a.id for a in sorted(chosen, key=lambda a: (-a.sti, a.id))]


def ecan_dds(g: Metagraph, params: EcanParams) -> DDSProblem:
    """Spreading as a decision system with a single ``spread`` action per stage.

    States are STI tuples over the graph's nodes; the reward is zero, so the
    greedy executor simply replays the spreading rule.
    """
    nodes = g.nodes()
    transfer = spread_matrix(g, nodes)
    has_neighbors = (transfer.sum(axis=0) > 0).astype(float)
    start = tuple(float(g.atom(n).sti) for n in nodes)

    def outcomes(t, s, a):
        return [(1.0, tuple(float(v) for v in spread_once(np.array(s), transfer, has_neighbors, params)))]

    return DDSProblem(
        max(1, params.iterations),
        start,
        lambda t, s: ["spread"],
        lambda t, s, a: 0.0,
        outcomes,
        name="ecan",
    )
