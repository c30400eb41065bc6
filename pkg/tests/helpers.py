"""Random fixtures shared by several test modules."""

import numpy as np

from cogkernel.logic import EvidenceTV
from cogkernel.metagraph import Metagraph

LABELS = ("Concept", "Observation", "Node")
EDGE_LABELS = ("Link", "Similarity", "Member")


def random_graph(rng: np.random.Generator, max_atoms: int = 30, edge_on_edge: bool = True, annotate: bool = True) -> Metagraph:
    g = Metagraph()
    n_nodes = int(rng.integers(1, max(2, max_atoms // 2)))
    for _ in range(n_nodes):
        kwargs = {}
        if annotate and rng.random() < 0.3:
            kwargs["tv"] = EvidenceTV(float(rng.random()), float(rng.random()))
        if annotate and rng.random() < 0.3:
            kwargs["sti"] = float(rng.normal())
        g.add_node(LABELS[int(rng.integers(len(LABELS)))], **kwargs)
    while len(g) < max_atoms and rng.random() < 0.95:
        pool = g.atom_ids() if edge_on_edge else g.nodes()
        arity = int(rng.integers(1, 4))
        targets = [int(rng.choice(pool)) for _ in range(arity)]
        g.add_edge(EDGE_LABELS[int(rng.integers(len(EDGE_LABELS)))], targets)
    return g


def random_node_graph(rng: np.random.Generator, n_nodes: int, n_edges: int, node_labels=("A", "B"), edge_labels=("R", "Similarity")) -> Metagraph:
    """Binary edges between distinct nodes only."""
    g = Metagraph()
    nodes = [g.add_node(node_labels[int(rng.integers(len(node_labels)))]) for _ in range(n_nodes)]
    for _ in range(n_edges):
        a, b = rng.choice(len(nodes), size=2, replace=False)
        g.add_edge(edge_labels[int(rng.integers(len(edge_labels)))], [nodes[int(a)], nodes[int(b)]])
    return g


def random_dds(rng: np.random.Generator, max_horizon: int = 4, max_actions: int = 4, n_states: int = 5, stochastic: bool = False):
    """Random tabular decision problem with integer rewards."""
    from cogkernel.decision import DDSProblem

    horizon = int(rng.integers(1, max_horizon + 1))
    n_act = {(t, s): int(rng.integers(1, max_actions + 1)) for t in range(horizon) for s in range(n_states)}
    rewards = {(t, s, a): int(rng.integers(-3, 6)) for (t, s), k in n_act.items() for a in range(k)}
    table = {}
    for key in rewards:
        if stochastic and rng.random() < 0.5:
            a, b = (int(v) for v in rng.integers(0, n_states, size=2))
            p = float(rng.uniform(0.1, 0.9))
            table[key] = [(p, a), (1 - p, b)] if a != b else [(1.0, a)]
        else:
            table[key] = [(1.0, int(rng.integers(0, n_states)))]
    return DDSProblem(
        horizon,
        0,
        lambda t, s: list(range(n_act[(t, s)])),
        lambda t, s, a: rewards[(t, s, a)],
        lambda t, s, a: table[(t, s, a)],
        name="random",
    )
