"""Decision dags and combinatorial decision dags (CoDDs).

A decision dag is a tree of binary tests with shared subtrees. A test
either reads one input bit or, in a CoDD, asks another named dag for its
output on the same input and branches on its truthiness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Union

from ..errors import IndexOutOfRange, UnresolvedDagRef


@dataclass(frozen=True)
class DagRef:
    name: str


@dataclass(frozen=True)
class Leaf:
    value: object


@dataclass(frozen=True)
class Test:
    var: Union[int, DagRef]
    low: "DecisionDag"
    high: "DecisionDag"


DecisionDag = Union[Leaf, Test]


def eval_decision_dag(
    d: DecisionDag,
    bits,
    env: Mapping[str, DecisionDag] | None = None,
    _active: tuple[str, ...] = (),
):
    """Evaluate top-down; a ``DagRef`` test takes the high branch when the referenced dag returns a truthy value."""
    env = env or {}
    node = d
    while isinstance(node, Test):
        if isinstance(node.var, DagRef):
            name = node.var.name
            if name not in env:
                raise UnresolvedDagRef(f"no dag named {name!r}")
            if name in _active:
                raise UnresolvedDagRef(f"cyclic dag reference through {name!r}")
            taken = bool(eval_decision_dag(env[name], bits, env, _active + (name,)))
        else:
            if not 0 <= node.var < len(bits):
                raise IndexOutOfRange(f"input index {node.var} outside input of length {len(bits)}")
            taken = bool(bits[node.var])
        node = node.high if taken else node.low
    return node.value


def dag_size(d: DecisionDag) -> int:
    """Number of distinct nodes reachable from the root (shared subdags count once)."""
    seen: set = set()
    stack = [d]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        if isinstance(node, Test):
            stack.extend((node.low, node.high))
    return len(seen)


def truth_table(d: DecisionDag, n_inputs: int, env: Mapping[str, DecisionDag] | None = None) -> list:
    """Outputs for every input in lexicographic order (bit 0 most significant)."""
    return [eval_decision_dag(d, bits, env) for bits in product((0, 1), repeat=n_inputs)]


def xor_dag(i: int = 0, j: int = 1) -> DecisionDag:
    zero, one = Leaf(0), Leaf(1)
    return Test(i, Test(j, zero, one), Test(j, one, zero))
