"""Simplicity bundles: Pareto-optimal cost vectors over several measures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .combination import CombinationSystem


@dataclass(frozen=True)
class Measure:
    """One simplicity measure: primitive costs plus a per-production cost.

    ``op_cost`` defaults to the system's own production cost.
    """

    base: Mapping[str, float]
    op_cost: Callable[[int, str, str], float] | None = None


def pareto_front(vectors) -> list[tuple[float, ...]]:
    """Coordinatewise-minimal vectors, duplicates removed, sorted."""
    unique = sorted(set(tuple(v) for v in vectors))
    front = []
    for v in unique:
        dominated = any(all(a <= b for a, b in zip(u, v)) and u != v for u in unique)
        if not dominated:
            front.append(v)
    return front


def simplicity_bundle(
    system: CombinationSystem,
    x: str,
    measures: Sequence[Measure],
    depth: int = 6,
) -> list[tuple[float, ...]]:
    """Pareto frontier of measure vectors over decomposition trees of ``x`` up to ``depth``.

    A tree of depth 0 is ``x`` taken as a primitive; each level adds one
    combination step. Vectors with an infinite coordinate are discarded.
    """
    if not measures:
        raise ValueError("at least one measure is required")
    costs = [m.op_cost or system.cost for m in measures]
    memo: dict[tuple[str, int], list[tuple[float, ...]]] = {}

    def vectors(e: str, d: int) -> list[tuple[float, ...]]:
        key = (e, d)
        if key in memo:
            return memo[key]
        found = []
        prim = tuple(float(m.base.get(e, math.inf)) for m in measures)
        if all(math.isfinite(c) for c in prim):
            found.append(prim)
        if d > 0:
            for op, y, z in system.producers(e):
                step = tuple(c(op, y, z) for c in costs)
                for vy in vectors(y, d - 1):
                    for vz in vectors(z, d - 1):
                        found.append(tuple(a + b + s for a, b, s in zip(vy, vz, step)))
        memo[key] = pareto_front(found)
        return memo[key]

    return vectors(x, depth)
