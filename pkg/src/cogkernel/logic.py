"""Four-valued paraconsistent truth values and their uncertain refinements.

A crisp truth value is a pair ``(pos, neg)`` recording whether a proposition
has support for being true and support for being false:

========  =====  =====
value     pos    neg
========  =====  =====
BOTH      T      T
TRUE      T      F
FALSE     F      T
NEITHER   F      F
========  =====  =====

Weighting the two components by evidence gives :class:`EvidenceTV`
``(w_plus, w_minus)``; rescaling that pair gives the strength/confidence
form :class:`SimpleTV` ``(s, c)`` used by probabilistic term logic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ParseError, RangeError


class FourValued(enum.Enum):
    BOTH = (True, True)
    TRUE = (True, False)
    FALSE = (False, True)
    NEITHER = (False, False)

    @property
    def pos(self) -> bool:
        return self.value[0]

    @property
    def neg(self) -> bool:
        return self.value[1]

    @classmethod
    def from_pair(cls, pos: bool, neg: bool) -> "FourValued":
        return cls((bool(pos), bool(neg)))

    def __and__(self, other: "FourValued") -> "FourValued":
        return fv_and(self, other)

    def __or__(self, other: "FourValued") -> "FourValued":
        return fv_or(self, other)

    def __invert__(self) -> "FourValued":
        return fv_not(self)


def fv_and(a: FourValued, b: FourValued) -> FourValued:
    return FourValued.from_pair(a.pos and b.pos, a.neg or b.neg)


def fv_or(a: FourValued, b: FourValued) -> FourValued:
    return FourValued.from_pair(a.pos or b.pos, a.neg and b.neg)


def fv_not(a: FourValued) -> FourValued:
    return FourValued.from_pair(a.neg, a.pos)


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise RangeError(f"{name}={value!r} outside [0, 1]")
    return value


@dataclass(frozen=True)
class EvidenceTV:
    """Positive and negative evidence, each normalised to [0, 1].

    The two components are independent: a situation may contribute to both,
    so ``w_plus + w_minus`` can exceed 1.
    """

    w_plus: float
    w_minus: float

    def __post_init__(self):
        object.__setattr__(self, "w_plus", _check_unit("w_plus", self.w_plus))
        object.__setattr__(self, "w_minus", _check_unit("w_minus", self.w_minus))

    @classmethod
    def from_counts(cls, n_plus: float, n_minus: float, k: float = 1.0) -> "EvidenceTV":
        """Evidence from raw counts with lookahead ``k`` (confidence ``n/(n+k)``)."""
        if n_plus < 0 or n_minus < 0:
            raise RangeError("evidence counts must be non-negative")
        if k <= 0:
            raise RangeError("lookahead k must be positive")
        n = n_plus + n_minus
        if n == 0:
            return cls(0.0, 0.0)
        conf = n / (n + k)
        return cls(n_plus / n * conf, n_minus / n * conf)

    def to_simple(self) -> "SimpleTV":
        return evidence_to_simple(self)

    def to_four_valued(self, eps: float = 0.0) -> FourValued:
        return evidence_to_four_valued(self, eps)

    def literal(self) -> str:
        return f"tv={self.w_plus!r},{self.w_minus!r}"


@dataclass(frozen=True)
class SimpleTV:
    """Strength ``s`` (a probability) with confidence ``c``."""

    s: float
    c: float

    def __post_init__(self):
        object.__setattr__(self, "s", _check_unit("s", self.s))
        object.__setattr__(self, "c", _check_unit("c", self.c))

    def to_evidence(self) -> EvidenceTV:
        return simple_to_evidence(self)


def simple_to_evidence(stv: SimpleTV) -> EvidenceTV:
    return EvidenceTV(stv.s * stv.c, (1.0 - stv.s) * stv.c)


def evidence_to_simple(e: EvidenceTV) -> SimpleTV:
    total = e.w_plus + e.w_minus
    if total == 0.0:
        return SimpleTV(0.5, 0.0)
    return SimpleTV(e.w_plus / total, min(total, 1.0))


def evidence_to_four_valued(e: EvidenceTV, eps: float = 0.0) -> FourValued:
    if eps < 0:
        raise RangeError("eps must be non-negative")
    return FourValued.from_pair(e.w_plus > eps, e.w_minus > eps)


def parse_tv_literal(text: str) -> EvidenceTV:
    """Parse ``tv=<w+>,<w->`` (the ``tv=`` prefix is optional)."""
    body = text[3:] if text.startswith("tv=") else text
    parts = body.split(",")
    if len(parts) != 2:
        raise ParseError(f"bad truth value literal {text!r}")
    try:
        w_plus, w_minus = (float(p) for p in parts)
    except ValueError as exc:
        raise ParseError(f"bad truth value literal {text!r}") from exc
    if not all(math.isfinite(w) for w in (w_plus, w_minus)):
        raise ParseError(f"non-finite truth value {text!r}")
    try:
        return EvidenceTV(w_plus, w_minus)
    except RangeError as exc:
        raise ParseError(str(exc)) from exc


_SHORT = {FourValued.BOTH: "B", FourValued.TRUE: "T", FourValued.FALSE: "F", FourValued.NEITHER: "N"}


def connective_tables() -> dict[str, list[list[str]]]:
    """Truth tables of the three connectives, as rows of short labels."""
    order = [FourValued.TRUE, FourValued.BOTH, FourValued.NEITHER, FourValued.FALSE]
    tables = {}
    for name, op in (("and", fv_and), ("or", fv_or)):
        rows = [[name] + [_SHORT[b] for b in order]]
        for a in order:
            rows.append([_SHORT[a]] + [_SHORT[op(a, b)] for b in order])
        tables[name] = rows
    tables["not"] = [["not", ""]] + [[_SHORT[a], _SHORT[fv_not(a)]] for a in order]
    return tables
