"""Combination systems: finite entities plus binary combinators with costs.

A production ``(i, y, z) -> (x1, ..., xk)`` says combinator ``i`` applied
to ``y`` and ``z`` yields each listed entity; its cost is the operator's
share of the simplicity of the result. Combinators are partial: a missing
production means "undefined".

Text format, one statement per line, ``#`` comments allowed::

    entity a base=1
    entity ab
    op 0 a b -> ab cost=0.5
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ..errors import ParseError

Key = tuple[int, str, str]


@dataclass(frozen=True)
class Production:
    outputs: tuple[str, ...]
    cost: float


@dataclass(frozen=True, eq=False)
class CombinationSystem:
    """Immutable combination system.

    ``entities`` keeps declaration order, which also serves as the tie-break
    order for entity ids. ``productions`` maps ``(op, y, z)`` to its outputs
    and cost.
    """

    entities: tuple[str, ...]
    productions: Mapping[Key, Production]
    _rank: dict = field(init=False, repr=False)
    _producers: dict = field(init=False, repr=False)
    _uses: dict = field(init=False, repr=False)

    def __post_init__(self):
        entities = tuple(self.entities)
        if len(set(entities)) != len(entities):
            raise ValueError("duplicate entity ids")
        rank = {e: i for i, e in enumerate(entities)}
        prods: dict[Key, Production] = {}
        for (op, y, z), prod in self.productions.items():
            if not isinstance(prod, Production):
                outputs, cost = prod
                prod = Production(tuple(outputs), float(cost))
            for e in (y, z, *prod.outputs):
                if e not in rank:
                    raise ValueError(f"production ({op}, {y}, {z}) uses undeclared entity {e!r}")
            if not prod.outputs:
                raise ValueError(f"production ({op}, {y}, {z}) has no outputs")
            if not (math.isfinite(prod.cost) and prod.cost >= 0):
                raise ValueError(f"production ({op}, {y}, {z}) has invalid cost {prod.cost!r}")
            prods[(int(op), y, z)] = prod
        order = sorted(prods, key=lambda k: (k[0], rank[k[1]], rank[k[2]]))
        producers: dict[str, list[Key]] = {e: [] for e in entities}
        uses: dict[str, list[Key]] = {e: [] for e in entities}
        for key in order:
            for x in dict.fromkeys(prods[key].outputs):
                producers[x].append(key)
            uses[key[1]].append(key)
            if key[2] != key[1]:
                uses[key[2]].append(key)
        object.__setattr__(self, "entities", entities)
        object.__setattr__(self, "productions", {k: prods[k] for k in order})
        object.__setattr__(self, "_rank", rank)
        object.__setattr__(self, "_producers", {e: tuple(v) for e, v in producers.items()})
        object.__setattr__(self, "_uses", {e: tuple(v) for e, v in uses.items()})

    @property
    def ops(self) -> tuple[int, ...]:
        return tuple(sorted({k[0] for k in self.productions}))

    def rank(self, entity: str) -> int:
        return self._rank[entity]

    def key_order(self, key: Key) -> tuple[int, int, int]:
        """Lexicographic ``(op, y, z)`` order used for every tie-break."""
        return (key[0], self._rank[key[1]], self._rank[key[2]])

    def apply(self, op: int, y: str, z: str) -> tuple[str, ...]:
        """Outputs of ``op(y, z)``; empty when undefined."""
        prod = self.productions.get((op, y, z))
        return prod.outputs if prod else ()

    def cost(self, op: int, y: str, z: str) -> float:
        prod = self.productions.get((op, y, z))
        return prod.cost if prod else math.inf

    def producers(self, x: str) -> tuple[Key, ...]:
        """Productions that list ``x`` among their outputs, in tie-break order."""
        return self._producers[x]

    def uses(self, e: str) -> tuple[Key, ...]:
        """Productions taking ``e`` as an argument."""
        return self._uses[e]

    def restricted(self, ops: Iterable[int]) -> "CombinationSystem":
        keep = set(ops)
        return CombinationSystem(self.entities, {k: p for k, p in self.productions.items() if k[0] in keep})

    def __repr__(self) -> str:
        return f"CombinationSystem(entities={len(self.entities)}, productions={len(self.productions)})"


def build_system(
    entities: Iterable[str],
    productions: Mapping[Key, tuple[Iterable[str], float]] | Iterable[tuple[int, str, str, Iterable[str], float]],
) -> CombinationSystem:
    """Convenience constructor accepting ``{(i, y, z): (outputs, cost)}`` or 5-tuples."""
    if isinstance(productions, Mapping):
        items = {k: Production(tuple(o), float(c)) for k, (o, c) in productions.items()}
    else:
        items = {}
        for op, y, z, outputs, cost in productions:
            items[(op, y, z)] = Production(tuple(outputs), float(cost))
    return CombinationSystem(tuple(entities), items)


# -- text format ---------------------------------------------------------------


def _parse_float(token: str, name: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"bad {name} value {token!r}", lineno) from None
    if math.isnan(value) or value < 0:
        raise ParseError(f"{name} must be non-negative", lineno)
    return value


def parse_system(text: str) -> tuple[CombinationSystem, dict[str, float]]:
    """Parse the text format into ``(system, base_costs)``.

    Entities without ``base=`` get an infinite base cost (not primitive);
    productions without ``cost=`` cost 0.
    """
    entities: list[str] = []
    base: dict[str, float] = {}
    prods: dict[Key, Production] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        head = tokens[0]
        if head == "entity":
            if len(tokens) not in (2, 3):
                raise ParseError("expected: entity <id> [base=<cost>]", lineno)
            name = tokens[1]
            if name in base:
                raise ParseError(f"duplicate entity {name!r}", lineno)
            cost = math.inf
            if len(tokens) == 3:
                if not tokens[2].startswith("base="):
                    raise ParseError(f"unexpected token {tokens[2]!r}", lineno)
                cost = _parse_float(tokens[2][5:], "base", lineno)
            entities.append(name)
            base[name] = cost
        elif head == "op":
            if "->" not in tokens:
                raise ParseError("expected: op <i> <y> <z> -> <x> [cost=<c>]", lineno)
            arrow = tokens.index("->")
            if arrow != 4:
                raise ParseError("expected: op <i> <y> <z> -> <x> [cost=<c>]", lineno)
            try:
                op = int(tokens[1])
            except ValueError:
                raise ParseError(f"bad operator index {tokens[1]!r}", lineno) from None
            if op < 0:
                raise ParseError("operator index must be non-negative", lineno)
            rest = tokens[5:]
            cost = 0.0
            if rest and rest[-1].startswith("cost="):
                cost = _parse_float(rest[-1][5:], "cost", lineno)
                if math.isinf(cost):
                    raise ParseError("operator cost must be finite", lineno)
                rest = rest[:-1]
            if not rest:
                raise ParseError("production needs at least one output", lineno)
            for e in (tokens[2], tokens[3], *rest):
                if e not in base:
                    raise ParseError(f"undeclared entity {e!r}", lineno)
            key = (op, tokens[2], tokens[3])
            if key in prods:
                raise ParseError(f"duplicate production {key}", lineno)
            prods[key] = Production(tuple(rest), cost)
        else:
            raise ParseError(f"unknown statement {head!r}", lineno)
    return CombinationSystem(tuple(entities), prods), base


def format_system(system: CombinationSystem, base: Mapping[str, float]) -> str:
    lines = []
    for e in system.entities:
        b = base.get(e, math.inf)
        lines.append(f"entity {e}" if math.isinf(b) else f"entity {e} base={b!r}")
    for (op, y, z), prod in system.productions.items():
        lines.append(f"op {op} {y} {z} -> {' '.join(prod.outputs)} cost={prod.cost!r}")
    return "\n".join(lines) + "\n"


def read_system(path) -> tuple[CombinationSystem, dict[str, float]]:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())
