"""Combinatory function optimisation (COFO).

COFO treats black-box optimisation as a decision system: the state is the
dataset of evaluated points, an action picks two promising points and a
combinator, and the reward is the gain of a guidance measure on the
dataset once the combined point has been evaluated.

Every step draws its randomness from ``stream(seed, "step", k)``, so runs
with a larger budget replay the smaller run exactly before going further.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from itertools import product
from typing import Callable, Hashable, Sequence

import numpy as np

from ..errors import BudgetExhausted
from ..rng import stream

BEST_SO_FAR = "bestSoFar"
ENTROPY_REDUCTION = "entropyReduction"
GUIDANCE = (BEST_SO_FAR, ENTROPY_REDUCTION)

Point = Hashable
Combinator = Callable[[Point, Point, np.random.Generator], Point]


@dataclass(frozen=True)
class CofoProblem:
    objective: Callable[[Point], float]
    initial_pool: Sequence[Point]
    combinators: Sequence[Combinator]
    rho: float = 0.25
    guidance: str = BEST_SO_FAR
    budget: int = 100
    beta: float = 1.0
    max_resample: int = 16
    max_idle_steps: int = 100
    format_point: Callable[[Point], str] = str

    def __post_init__(self):
        if not 0 < self.rho <= 1:
            raise ValueError("rho must lie in (0, 1]")
        if self.guidance not in GUIDANCE:
            raise ValueError(f"unknown guidance {self.guidance!r}")
        if not self.combinators:
            raise ValueError("at least one combinator is required")
        if self.budget < len(set(self.initial_pool)):
            raise ValueError("budget must cover the initial pool")


class CofoDataset:
    """Evaluated points in evaluation order; ``values[x]`` is the recorded ``F(x)``.

    A ranking by value (earlier evaluations first among equals) is kept up
    to date so the promising set is cheap to read.
    """

    def __init__(self, values: dict | None = None):
        self.values: dict = {}
        self._ranked: list = []
        for x, f in (values or {}).items():
            self.add(x, f)

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, x) -> bool:
        return x in self.values

    def add(self, x, fx: float) -> None:
        if x in self.values:
            raise ValueError(f"{x!r} already evaluated")
        fx = float(fx)
        bisect.insort(self._ranked, (-fx, len(self.values), x), key=lambda item: item[:2])
        self.values[x] = fx

    def ranked(self) -> list:
        return [item[2] for item in self._ranked]

    def best(self) -> tuple[Point, float]:
        if not self._ranked:
            return None, -math.inf
        neg_f, _, x = self._ranked[0]
        return x, -neg_f

    def copy(self) -> "CofoDataset":
        other = CofoDataset()
        other.values = dict(self.values)
        other._ranked = list(self._ranked)
        return other


def promising_set(d: CofoDataset, rho: float) -> list:
    """Top ``ceil(rho * |D|)`` points by value; earlier evaluations win ties."""
    k = max(1, math.ceil(rho * len(d)))
    return [item[2] for item in d._ranked[:k]]


def softmax_entropy(values: Sequence[float], beta: float = 1.0) -> float:
    """Shannon entropy (nats) of ``softmax(beta * values)``."""
    v = beta * np.asarray(values, dtype=float)
    v = v - v.max()
    w = np.exp(v)
    p = w / w.sum()
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum())


def guidance_value(d: CofoDataset, guidance: str, beta: float = 1.0) -> float:
    if guidance == BEST_SO_FAR:
        return d.best()[1]
    return -softmax_entropy(list(d.values.values()), beta)


def guidance_reward(before: CofoDataset, after: CofoDataset, guidance: str, beta: float = 1.0) -> float:
    """``q(D*) - q(D)``; for best-so-far this is ``max(0, F(z) - best)``."""
    if guidance == BEST_SO_FAR:
        return max(0.0, after.best()[1] - before.best()[1])
    return softmax_entropy(list(before.values.values()), beta) - softmax_entropy(list(after.values.values()), beta)


@dataclass(frozen=True)
class StepRecord:
    step: int
    z: Point
    fz: float
    reward: float
    best_f: float


def _draw_candidate(p: CofoProblem, d: CofoDataset, rng: np.random.Generator):
    """Sample ``(x, y, i, z)`` avoiding already-evaluated ``z``; None after ``max_resample`` misses.

    The second half of the attempts samples parents from the whole dataset.
    """
    promising = promising_set(d, p.rho)
    everything = list(d.values)
    picks = rng.random((p.max_resample, 3))
    n_ops = len(p.combinators)
    for attempt in range(p.max_resample):
        pool = promising if attempt < p.max_resample // 2 else everything
        x = pool[int(picks[attempt, 0] * len(pool))]
        y = pool[int(picks[attempt, 1] * len(pool))]
        i = int(picks[attempt, 2] * n_ops)
        z = p.combinators[i](x, y, rng)
        if z not in d:
            return x, y, i, z
    return None


def cofo_step(p: CofoProblem, d: CofoDataset, seed: int, k: int):
    """One greedy COFO step; returns ``(z, F(z), reward, D*)`` or None when skipped."""
    if len(d) >= p.budget:
        raise BudgetExhausted(f"evaluation budget {p.budget} used up")
    cand = _draw_candidate(p, d, stream(seed, "step", k))
    if cand is None:
        return None
    z = cand[3]
    fz = float(p.objective(z))
    after = d.copy()
    after.add(z, fz)
    return z, fz, guidance_reward(d, after, p.guidance, p.beta), after


def _surrogate(d: CofoDataset, guesses: dict, x) -> float:
    return d.values[x] if x in d.values else guesses[x]


def _plan_step(p: CofoProblem, d: CofoDataset, seed: int, k: int, candidates: int = 8, depth: int = 3):
    """Choose among ``candidates`` sampled triples by a ``depth``-step surrogate lookahead.

    A point not yet evaluated is valued at the mean of its parents' values;
    the lookahead continues with random combinations drawn from the
    surrogate dataset and scores the best value reached.
    """
    best = None
    best_score = -math.inf
    for c in range(candidates):
        rng = stream(seed, "step", k, "candidate", c)
        cand = _draw_candidate(p, d, rng)
        if cand is None:
            continue
        x, y, i, z = cand
        guesses = {z: 0.5 * (d.values[x] + d.values[y])}
        score = guesses[z]
        pool = list(d.values) + [z]
        for _ in range(depth - 1):
            a = pool[int(rng.integers(len(pool)))]
            b = z
            j = int(rng.integers(len(p.combinators)))
            u = p.combinators[j](a, b, rng)
            if u in d.values or u in guesses:
                continue
            guesses[u] = 0.5 * (_surrogate(d, guesses, a) + _surrogate(d, guesses, b))
            pool.append(u)
            score = max(score, guesses[u])
        if score > best_score:
            best, best_score = cand, score
    return best


@dataclass(frozen=True)
class CofoResult:
    best_x: Point
    best_f: float
    dataset: CofoDataset
    steps: tuple
    evaluations: int


def run_cofo(p: CofoProblem, mode: str = "greedy", seed: int = 0) -> CofoResult:
    """Evaluate the pool, then iterate COFO steps until the budget is spent.

    A step whose candidates are all duplicates is skipped without spending
    budget; ``max_idle_steps`` consecutive skips end the run early.
    """
    if mode not in ("greedy", "dp"):
        raise ValueError(f"unknown COFO mode {mode!r}")
    d = CofoDataset()
    records = []
    for x in p.initial_pool:
        if x not in d and len(d) < p.budget:
            d.add(x, p.objective(x))
    idle = 0
    k = 0
    while len(d) < p.budget and idle < p.max_idle_steps:
        if mode == "greedy":
            cand = _draw_candidate(p, d, stream(seed, "step", k))
        else:
            cand = _plan_step(p, d, seed, k)
        k += 1
        if cand is None:
            idle += 1
            continue
        idle = 0
        z = cand[3]
        fz = float(p.objective(z))
        if p.guidance == BEST_SO_FAR:
            before = d.best()[1]
            d.add(z, fz)
            reward = max(0.0, fz - before)
        else:
            before = softmax_entropy(list(d.values.values()), p.beta)
            d.add(z, fz)
            reward = before - softmax_entropy(list(d.values.values()), p.beta)
        records.append(StepRecord(k - 1, z, fz, reward, d.best()[1]))
    best_x, best_f = d.best()
    return CofoResult(best_x, best_f, d, tuple(records), len(d))


# -- associativity of combinators -------------------------------------------------


def check_mutual_associativity(
    combinators: Sequence[Callable[[Point, Point], Point]],
    domain: Sequence[Point],
    fold_length: int = 4,
) -> tuple[bool, tuple | None]:
    """Check ``C_i(C_j(x, y), z) == C_j(x, C_i(y, z))`` for all operator pairs and domain triples.

    When that holds, also confirm that left and right folds agree for every
    operator sequence over every element list up to ``fold_length``.
    Returns ``(ok, counterexample)``.
    """
    n_ops = len(combinators)
    for i, j in product(range(n_ops), repeat=2):
        ci, cj = combinators[i], combinators[j]
        for x, y, z in product(domain, repeat=3):
            left = ci(cj(x, y), z)
            right = cj(x, ci(y, z))
            if left != right:
                return False, ("associativity", i, j, x, y, z, left, right)
    for length in range(2, fold_length + 1):
        for ops in product(range(n_ops), repeat=length - 1):
            for xs in product(domain, repeat=length):
                left = xs[0]
                for op, x in zip(ops, xs[1:]):
                    left = combinators[op](left, x)
                right = xs[-1]
                for op, x in zip(reversed(ops), reversed(xs[:-1])):
                    right = combinators[op](x, right)
                if left != right:
                    return False, ("fold", ops, xs, left, right)
    return True, None


# -- objectives ---------------------------------------------------------------------


def onemax_problem(
    n_bits: int = 8,
    budget: int = 500,
    rho: float = 0.25,
    guidance: str = BEST_SO_FAR,
    pool_size: int = 8,
    seed: int = 0,
) -> CofoProblem:
    """Count of ones over ``n_bits``-bit tuples; point mutation and uniform crossover."""
    rng = stream(seed, "onemax-pool")
    pool = [tuple(int(b) for b in rng.integers(0, 2, size=n_bits)) for _ in range(pool_size)]

    def mutate(x, y, r):
        i = int(r.integers(len(x)))
        return x[:i] + (1 - x[i],) + x[i + 1 :]

    def crossover(x, y, r):
        mask = r.integers(0, 2, size=len(x))
        return tuple(a if m else b for a, b, m in zip(x, y, mask))

    return CofoProblem(
        objective=lambda x: float(sum(x)),
        initial_pool=list(dict.fromkeys(pool)),
        combinators=(mutate, crossover),
        rho=rho,
        guidance=guidance,
        budget=max(budget, len(set(pool))),
        format_point=lambda x: "".join(map(str, x)),
    )


def seeded_cosm_problem(
    budget: int = 50,
    rho: float = 0.25,
    guidance: str = BEST_SO_FAR,
    seed: int = 0,
) -> CofoProblem:
    """Search the entities of a seeded combination system for the strongest pattern.

    ``F(x)`` is the largest pattern intensity of any production of ``x``
    (0 when there is none); the combinators are the system's operators,
    and an undefined combination returns its first argument.
    """
    from ..simplicity.cosm import PatternScorer
    from ..simplicity.random_systems import random_associative_system

    system, base, _ = random_associative_system(stream(seed, "cofo-system"))
    scorer = PatternScorer(system, base, reference_ops=(0,))
    score: dict = {}
    for rec in scorer.records():
        score[rec.x] = max(score.get(rec.x, 0.0), rec.intensity)

    def make(op):
        def combine(x, y, r):
            out = system.apply(op, x, y)
            return out[0] if out else x

        return combine

    pick = stream(seed, "cofo-pool").permutation(len(system.entities))[:3]
    primitives = [system.entities[int(i)] for i in sorted(pick)]
    return CofoProblem(
        objective=lambda x: score.get(x, 0.0),
        initial_pool=primitives,
        combinators=tuple(make(op) for op in system.ops),
        rho=rho,
        guidance=guidance,
        budget=max(budget, len(primitives)),
    )


OBJECTIVES = {"onemax": onemax_problem, "seeded-cosm": seeded_cosm_problem}
