"""Random combination systems for property checks.

``random_system`` draws unconstrained systems for solver tests.
``random_associative_system`` draws systems whose combinators all compute
one commutative, associative (partial) operation on a small carrier, each
with its own symmetric cost table. Those are the systems on which the
cost-associativity bound on subpattern transitivity can be exercised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from ..rng import stream
from .combination import CombinationSystem, Production
from .cosm import check_approx_cost_associativity, check_approx_partial_order


def random_system(
    rng: np.random.Generator,
    n_entities: int = 8,
    n_ops: int = 2,
    n_productions: int = 12,
    p_primitive: float = 0.5,
    max_cost: float = 3.0,
    layered: bool = False,
) -> tuple[CombinationSystem, dict[str, float]]:
    """Random system with at least one finite primitive.

    With ``layered=True`` entities sit on at most five layers and every
    production feeds a strictly higher layer, so optimal derivation trees
    are at most six levels deep.
    """
    names = [f"e{i}" for i in range(n_entities)]
    layer = sorted(int(v) for v in rng.integers(0, 5, size=n_entities))
    layer[0] = 0
    base = {}
    for i, e in enumerate(names):
        primitive = i == 0 or layer[i] == 0 or rng.random() < p_primitive
        base[e] = float(np.round(rng.uniform(0.5, 3 * max_cost), 3)) if primitive else math.inf
    prods: dict = {}
    for _ in range(n_productions):
        op = int(rng.integers(0, n_ops))
        if layered:
            top = int(rng.integers(0, n_entities))
            lower = [k for k in range(n_entities) if layer[k] < layer[top]]
            if not lower:
                continue
            y, z = (names[int(k)] for k in rng.choice(lower, size=2))
            outputs = (names[top],)
        else:
            y, z = (names[int(k)] for k in rng.integers(0, n_entities, size=2))
            k_out = 1 + int(rng.random() < 0.2)
            outputs = tuple(dict.fromkeys(names[int(k)] for k in rng.integers(0, n_entities, size=k_out)))
        prods[(op, y, z)] = Production(outputs, float(np.round(rng.uniform(0, max_cost), 3)))
    return CombinationSystem(tuple(names), prods), base


# -- associative carriers -----------------------------------------------------------


def _carrier(rng: np.random.Generator):
    """Return (labels, partial binary function on indices) for a random carrier."""
    kind = int(rng.integers(0, 4))
    if kind == 0:
        n = int(rng.integers(4, 11))
        labels = [str(k) for k in range(1, n + 1)]

        def f(a, b):
            s = (a + 1) + (b + 1)
            return s - 1 if s <= n else None

        return "sum", labels, f
    if kind == 1:
        labels = [format(k, "03b") for k in range(1, 8)]
        return "or", labels, lambda a, b: ((a + 1) | (b + 1)) - 1
    if kind == 2:
        n = int(rng.integers(3, 11))
        return "max", [f"m{k}" for k in range(n)], max
    m = int(rng.choice([12, 18, 24, 30, 36]))
    divisors = [d for d in range(1, m + 1) if m % d == 0]
    index = {d: k for k, d in enumerate(divisors)}
    return "lcm", [f"d{d}" for d in divisors], lambda a, b: index[math.lcm(divisors[a], divisors[b])]


def random_associative_system(
    rng: np.random.Generator, max_ops: int = 3
) -> tuple[CombinationSystem, dict[str, float], str]:
    """All combinators realise one commutative associative operation; costs are symmetric.

    Base costs are at least 1, so every reference simplicity is at least 1.
    """
    kind, labels, f = _carrier(rng)
    n = len(labels)
    n_ops = int(rng.integers(2, max_ops + 1))
    # the reference operator 0 tends to be dearer, so other operators can form patterns
    scale = np.concatenate(([rng.uniform(1.0, 3.0)], rng.uniform(0.1, 1.5, size=n_ops - 1)))
    prods = {}
    for op in range(n_ops):
        costs = rng.uniform(0.0, 2.0, size=(n, n)) * scale[op]
        costs = np.minimum(costs, costs.T)
        for a, b in product(range(n), repeat=2):
            out = f(a, b)
            if out is not None:
                prods[(op, labels[a], labels[b])] = Production((labels[out],), float(np.round(costs[a, b], 4)))
    base = {e: float(np.round(1.0 + rng.uniform(0.0, 2.0) * (1 + k), 4)) for k, e in enumerate(labels)}
    return CombinationSystem(tuple(labels), prods), base, kind


@dataclass(frozen=True)
class OrderBoundTrial:
    trial: int
    carrier: str
    entities: int
    ops: int
    deviation: float
    chains: int
    relations: int
    ok: bool
    counterexample: tuple | None


def order_bound_trial(seed: int, trial: int) -> OrderBoundTrial:
    """One random system: measure ``c`` then test the bound at ``c``.

    Operator 0 serves both as the reference operator for ``sigma1`` and as
    the inner operator of the right-nested cost ``C1``.
    """
    rng = stream(seed, "thm2", trial)
    system, base, kind = random_associative_system(rng)
    assoc = check_approx_cost_associativity(system, inner_ops=(0,))
    result = check_approx_partial_order(system, base, assoc.deviation, reference_ops=(0,))
    return OrderBoundTrial(
        trial,
        kind,
        len(system.entities),
        len(system.ops),
        assoc.deviation,
        result.chains,
        result.relations,
        result.ok,
        result.counterexample,
    )


def run_order_bound_check(trials: int, seed: int) -> list[OrderBoundTrial]:
    return [order_bound_trial(seed, t) for t in range(trials)]
