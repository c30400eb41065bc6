"""Compositional simplicity: solving, pattern intensity, subpattern order.

The simplicity ``sigma`` of an entity is the cheapest way to obtain it,
either as a primitive (its base cost) or by combining two entities with
some combinator::

    sigma(x) = min(base(x), min over x in op_i(y, z) of sigma(y) + sigma(z) + cost(i, y, z))

The least solution is found with Knuth's generalisation of Dijkstra's
algorithm to AND/OR graphs: an entity is finalised when it is the cheapest
unsettled candidate, and a production fires once both arguments are final.
This is exact for any non-negative costs.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from ..errors import NoFinitePrimitive, NotAProduction, NotMutuallyAssociative, UnreachableEntity, ZeroSimplicity
from .combination import CombinationSystem, Key


@dataclass(frozen=True)
class SimplicityAssignment:
    sigma: dict[str, float]
    base: dict[str, float]
    # cheapest decomposition per entity, None for primitives and unreachables
    via: dict[str, Key | None]

    def __getitem__(self, entity: str) -> float:
        return self.sigma[entity]


def _full_base(system: CombinationSystem, base: Mapping[str, float]) -> dict[str, float]:
    out = {}
    for e in system.entities:
        b = float(base.get(e, math.inf))
        if math.isnan(b) or b < 0:
            raise ValueError(f"base cost of {e!r} must be non-negative")
        out[e] = b
    return out


def solve_cosm(
    system: CombinationSystem,
    base: Mapping[str, float],
    ops: Iterable[int] | None = None,
) -> SimplicityAssignment:
    """Least fixed point of the simplicity equation, optionally restricted to ``ops``."""
    base = _full_base(system, base)
    if not any(math.isfinite(b) for b in base.values()):
        raise NoFinitePrimitive("every entity has an infinite base cost")
    allowed = None if ops is None else frozenset(ops)

    best = dict(base)
    final: dict[str, int] = {}
    heap = [(b, system.rank(e), e) for e, b in base.items() if math.isfinite(b)]
    heapq.heapify(heap)
    while heap:
        value, _, e = heapq.heappop(heap)
        if e in final or value > best[e]:
            continue
        final[e] = len(final)
        for key in system.uses(e):
            op, y, z = key
            if allowed is not None and op not in allowed:
                continue
            if y not in final or z not in final:
                continue
            prod = system.productions[key]
            candidate = best[y] + best[z] + prod.cost
            for x in prod.outputs:
                if x not in final and candidate < best[x]:
                    best[x] = candidate
                    heapq.heappush(heap, (candidate, system.rank(x), x))

    via: dict[str, Key | None] = {}
    for x in system.entities:
        via[x] = None
        if x not in final or best[x] == base[x]:
            continue
        # first production in (op, y, z) order attaining the optimum from earlier-settled inputs
        for key in system.producers(x):
            op, y, z = key
            if allowed is not None and op not in allowed:
                continue
            if y in final and z in final and final[y] < final[x] and final[z] < final[x]:
                if best[y] + best[z] + system.productions[key].cost == best[x]:
                    via[x] = key
                    break
    return SimplicityAssignment(best, base, via)


def cosm_residual(system: CombinationSystem, assignment: SimplicityAssignment, ops: Iterable[int] | None = None) -> float:
    """Largest violation of the fixed-point equation (0 for an exact solution)."""
    allowed = None if ops is None else frozenset(ops)
    sigma = assignment.sigma
    worst = 0.0
    for x in system.entities:
        rhs = assignment.base[x]
        for key in system.producers(x):
            if allowed is None or key[0] in allowed:
                rhs = min(rhs, sigma[key[1]] + sigma[key[2]] + system.productions[key].cost)
        lhs = sigma[x]
        if math.isinf(lhs) and math.isinf(rhs):
            continue
        worst = max(worst, abs(lhs - rhs))
    return worst


def conditional_simplicity(
    system: CombinationSystem,
    base: Mapping[str, float],
    context: Iterable[str] = (),
    ops: Iterable[int] | None = None,
) -> SimplicityAssignment:
    """``sigma(. | w)``: context entities are available for free."""
    adjusted = _full_base(system, base)
    for w in context:
        if w not in adjusted:
            raise KeyError(f"unknown context entity {w!r}")
        adjusted[w] = 0.0
    return solve_cosm(system, adjusted, ops)


# -- pattern intensity ---------------------------------------------------------


@dataclass(frozen=True)
class PatternRecord:
    y: str
    z: str
    op: int
    x: str
    intensity: float
    context: frozenset = frozenset()

    @property
    def is_pattern(self) -> bool:
        return self.intensity > 0


class PatternScorer:
    """Pattern intensities relative to a fixed reference simplicity.

    The reference simplicity ``sigma1`` is the CoSM built from ``base`` (with
    the context made free) using only ``reference_ops``. By default that set
    is empty, so ``sigma1`` is the primitive description cost and a
    decomposition is a pattern when describing the parts plus the combining
    step is cheaper than describing ``x`` directly.
    """

    def __init__(
        self,
        system: CombinationSystem,
        base: Mapping[str, float],
        context: Iterable[str] = (),
        reference_ops: Iterable[int] = (),
    ):
        self.system = system
        self.context = frozenset(context)
        self.reference_ops = frozenset(reference_ops)
        self.sigma1 = conditional_simplicity(system, base, self.context, self.reference_ops).sigma

    def h(self, op: int, y: str, z: str) -> float:
        return self.sigma1[y] + self.sigma1[z] + self.system.cost(op, y, z)

    def intensity(self, x: str, y: str, z: str, op: int) -> float:
        if x not in self.system.apply(op, y, z):
            raise NotAProduction(f"operator {op} applied to ({y}, {z}) does not yield {x}")
        s = self.sigma1[x]
        if s == 0:
            raise ZeroSimplicity(f"sigma1({x}) is zero")
        if math.isinf(s):
            raise UnreachableEntity(f"sigma1({x}) is infinite")
        return (s - self.h(op, y, z)) / s

    def records(self) -> list[PatternRecord]:
        """Intensity of every production whose output has finite positive sigma1."""
        out = []
        for key, prod in self.system.productions.items():
            op, y, z = key
            for x in dict.fromkeys(prod.outputs):
                s = self.sigma1[x]
                if s == 0 or math.isinf(s):
                    continue
                out.append(PatternRecord(y, z, op, x, self.intensity(x, y, z, op), self.context))
        return out

    def best_with(self, x: str, y: str) -> float:
        """``max over w, i`` of the intensity of ``x`` combined with ``w`` into ``y`` (either order)."""
        s = self.sigma1[y]
        if s == 0 or math.isinf(s):
            return -math.inf
        best = -math.inf
        for op, a, b in self.system.producers(y):
            if a == x or b == x:
                best = max(best, (s - self.h(op, a, b)) / s)
        return best

    def leq(self, x: str, y: str) -> tuple[bool, float]:
        if x == y:
            return True, self.best_with(x, y)
        best = self.best_with(x, y)
        return best > 0, best

    def relation(self) -> dict[str, dict[str, float]]:
        """``best[x][y]`` for every pair with at least one production of ``y`` from ``x``."""
        best: dict[str, dict[str, float]] = {e: {} for e in self.system.entities}
        for y in self.system.entities:
            s = self.sigma1[y]
            if s == 0 or math.isinf(s):
                continue
            for op, a, b in self.system.producers(y):
                value = (s - self.h(op, a, b)) / s
                for x in {a, b}:
                    if value > best[x].get(y, -math.inf):
                        best[x][y] = value
        return best


def pattern_intensity(
    system: CombinationSystem,
    base: Mapping[str, float],
    x: str,
    y: str,
    z: str,
    op: int,
    context: Iterable[str] = (),
    reference_ops: Iterable[int] = (),
) -> float:
    """``(sigma1(x|w) - h) / sigma1(x|w)`` with ``h = sigma1(y|w) + sigma1(z|w) + cost(op, y, z)``."""
    return PatternScorer(system, base, context, reference_ops).intensity(x, y, z, op)


def subpattern_leq(
    system: CombinationSystem,
    base: Mapping[str, float],
    x: str,
    y: str,
    context: Iterable[str] = (),
    reference_ops: Iterable[int] = (),
) -> tuple[bool, float]:
    """Whether ``x`` is a compositional subpattern of ``y``, with the best intensity.

    ``x <= x`` holds by definition. Without any production of ``y`` from
    ``x`` the answer is ``(False, -inf)``.
    """
    return PatternScorer(system, base, context, reference_ops).leq(x, y)


def strict_subpatterns(scorer: PatternScorer) -> dict[str, set[str]]:
    rel = scorer.relation()
    return {x: {y for y, v in ys.items() if v > 0 and y != x} for x, ys in rel.items()}


def build_subpattern_hierarchy(
    system: CombinationSystem,
    base: Mapping[str, float],
    context: Iterable[str] = (),
    reference_ops: Iterable[int] = (),
) -> list[tuple[str, str]]:
    """Edges ``x -> y`` of the subpattern relation with no ``u`` such that ``x <= u <= y``."""
    up = strict_subpatterns(PatternScorer(system, base, context, reference_ops))
    edges = []
    for x in system.entities:
        for y in sorted(up[x], key=system.rank):
            if not any(y in up[u] for u in up[x] if u != y):
                edges.append((x, y))
    return edges


# -- cost associativity ----------------------------------------------------------


@dataclass(frozen=True)
class CostAssociativity:
    ok: bool
    deviation: float
    triples: int
    witness: tuple | None = None


def _compose(system: CombinationSystem, op: int, left: Iterable[str], right: Iterable[str]) -> set[str]:
    out: set[str] = set()
    for a in left:
        for b in right:
            out.update(system.apply(op, a, b))
    return out


def check_mutual_associativity(system: CombinationSystem) -> tuple[int, str, str, str, int] | None:
    """First ``(i, x, y, z, j)`` with ``(x *_j y) *_i z != x *_j (y *_i z)``, or None."""
    ops = system.ops
    ents = system.entities
    for i in ops:
        for j in ops:
            for x in ents:
                for y in ents:
                    xy = system.apply(j, x, y)
                    for z in ents:
                        left = _compose(system, i, xy, (z,))
                        right = _compose(system, j, (x,), system.apply(i, y, z))
                        if left != right:
                            return (i, x, y, z, j)
    return None


def check_approx_cost_associativity(
    system: CombinationSystem,
    inner_ops: Iterable[int] | None = None,
) -> CostAssociativity:
    """Largest ``|C1 - C2|`` over all triples where the combination is defined.

    ``C1(x, y, z) = min_{i,j} cost(i, y, z) + cost(j, x, y *_i z)`` builds
    right-nested; ``C2(x, y, z) = min_{i,j} cost(i, x *_j y, z) + cost(j, x, y)``
    builds left-nested. ``inner_ops`` limits the operator used for the inner
    ``y *_i z`` step of ``C1`` (all operators by default).
    """
    bad = check_mutual_associativity(system)
    if bad is not None:
        i, x, y, z, j = bad
        raise NotMutuallyAssociative(
            f"({x} *{j} {y}) *{i} {z} differs from {x} *{j} ({y} *{i} {z})", triple=(x, y, z)
        )
    ops = system.ops
    inner = ops if inner_ops is None else tuple(sorted(set(inner_ops)))
    deviation = 0.0
    witness = None
    triples = 0
    for x, y, z in itertools.product(system.entities, repeat=3):
        c1 = math.inf
        for i in inner:
            for v in system.apply(i, y, z):
                for j in ops:
                    if system.apply(j, x, v):
                        c1 = min(c1, system.cost(i, y, z) + system.cost(j, x, v))
        c2 = math.inf
        for j in ops:
            for u in system.apply(j, x, y):
                for i in ops:
                    if system.apply(i, u, z):
                        c2 = min(c2, system.cost(i, u, z) + system.cost(j, x, y))
        if math.isinf(c1) and math.isinf(c2):
            continue
        triples += 1
        gap = abs(c1 - c2) if math.isfinite(c1) and math.isfinite(c2) else math.inf
        if gap > deviation:
            deviation, witness = gap, (x, y, z)
    return CostAssociativity(math.isfinite(deviation), deviation, triples, witness)


# -- approximate partial order -------------------------------------------------------


@dataclass(frozen=True)
class PartialOrderCheck:
    ok: bool
    chains: int
    relations: int
    counterexample: tuple | None = None
    worst_margin: float = math.inf


def check_approx_partial_order(
    system: CombinationSystem,
    base: Mapping[str, float],
    c: float,
    context: Iterable[str] = (),
    reference_ops: Iterable[int] = (),
    slack: float = 1e-9,
) -> PartialOrderCheck:
    """Check antisymmetry and ``x <= y <= z  =>  max_w I_{x,w}(z) >= -c``.

    Every chain of distinct entities is scanned. ``slack`` absorbs floating
    point rounding in the intensity quotient. ``worst_margin`` is the smallest
    value of ``max_w I_{x,w}(z) + c`` seen over all chains.
    """
    scorer = PatternScorer(system, base, context, reference_ops)
    rel = scorer.relation()
    up = {x: {y for y, v in ys.items() if v > 0 and y != x} for x, ys in rel.items()}
    relations = sum(len(v) for v in up.values())
    for x in system.entities:
        for y in up[x]:
            if x in up[y]:
                return PartialOrderCheck(False, 0, relations, ("antisymmetry", x, y))
    chains = 0
    worst = math.inf
    for x in system.entities:
        for y in sorted(up[x], key=system.rank):
            for z in sorted(up[y], key=system.rank):
                if z == x:
                    continue
                chains += 1
                value = rel[x].get(z, -math.inf)
                worst = min(worst, value + c)
                if value < -c - slack:
                    return PartialOrderCheck(False, chains, relations, ("transitivity", x, y, z, value), worst)
    return PartialOrderCheck(True, chains, relations, None, worst)
