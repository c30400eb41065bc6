"""Discrete decision systems and their executors.

A problem has ``horizon`` stages. At stage ``t`` in state ``s`` the agent
picks one of ``actions(t, s)``, collects ``reward(t, s, a)`` and moves to a
state drawn from ``outcomes(t, s, a)``, a list of ``(probability, state)``.

Three executors are provided: a softmax-greedy one, exact backward
induction, and a Monte-Carlo lookahead ("stochastic DP").
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Hashable, Sequence

import numpy as np

from ..errors import NoFeasibleAction, StateSpaceTooLarge
from ..rng import stream

State = Hashable
Action = Hashable


@dataclass(frozen=True)
class DDSProblem:
    horizon: int
    initial_state: State
    actions: Callable[[int, State], Sequence[Action]]
    reward: Callable[[int, State, Action], float]
    outcomes: Callable[[int, State, Action], Sequence[tuple[float, State]]]
    name: str = "dds"
    # actions are sets of atomic actions carried out together within a stage
    concurrent: bool = False

    def __post_init__(self):
        if self.horizon < 1:
            raise ValueError("horizon must be at least 1")

    def feasible(self, t: int, s: State) -> list[Action]:
        acts = list(self.actions(t, s))
        if not acts:
            raise NoFeasibleAction(f"no feasible action at stage {t} in state {s!r}")
        return acts

    def transition(self, t: int, s: State, a: Action, rng: np.random.Generator) -> State:
        outs = list(self.outcomes(t, s, a))
        if len(outs) == 1:
            return outs[0][1]
        u = rng.random()
        acc = 0.0
        for p, nxt in outs:
            acc += p
            if u < acc:
                return nxt
        return outs[-1][1]


def concurrent_action_sets(atomic: Sequence[Action], max_size: int | None = None) -> list[frozenset]:
    """Nonempty subsets of ``atomic`` (up to ``max_size``), smallest first."""
    limit = len(atomic) if max_size is None else max_size
    return [frozenset(c) for k in range(1, limit + 1) for c in combinations(atomic, k)]


@dataclass(frozen=True)
class Trajectory:
    states: tuple
    actions: tuple
    rewards: tuple

    @property
    def total_reward(self) -> float:
        return math.fsum(self.rewards)


def _argmax_first(values: Sequence[float]) -> int:
    best = 0
    for i, v in enumerate(values):
        if v > values[best]:
            best = i
    return best


def softmax(values: Sequence[float], temperature: float) -> np.ndarray:
    v = np.asarray(values, dtype=float) / temperature
    v = np.exp(v - v.max())
    return v / v.sum()


def run_greedy(p: DDSProblem, seed: int, temperature: float = 1.0) -> Trajectory:
    """Pick each action with probability proportional to ``exp(reward / temperature)``.

    Temperature 0 is the deterministic argmax, ties going to the earliest
    action in the feasible list.
    """
    if temperature < 0:
        raise ValueError("temperature must be non-negative")
    s = p.initial_state
    states, actions, rewards = [s], [], []
    for t in range(p.horizon):
        rng = stream(seed, "greedy", t)
        acts = p.feasible(t, s)
        rs = [float(p.reward(t, s, a)) for a in acts]
        if temperature == 0:
            k = _argmax_first(rs)
        else:
            k = int(rng.choice(len(acts), p=softmax(rs, temperature)))
        a = acts[k]
        s = p.transition(t, s, a, rng)
        actions.append(a)
        rewards.append(rs[k])
        states.append(s)
    return Trajectory(tuple(states), tuple(actions), tuple(rewards))


@dataclass(frozen=True)
class DPResult:
    policy: dict
    value: float
    state_values: dict = field(repr=False)

    def action(self, t: int, s: State) -> Action:
        return self.policy[(t, s)]


def reachable_states(p: DDSProblem, max_states: int = 10**6) -> list[set]:
    layers = [{p.initial_state}]
    total = 1
    for t in range(p.horizon):
        nxt: set = set()
        for s in layers[t]:
            for a in p.feasible(t, s):
                for prob, s2 in p.outcomes(t, s, a):
                    if prob > 0:
                        nxt.add(s2)
        total += len(nxt)
        if total > max_states:
            raise StateSpaceTooLarge(f"more than {max_states} reachable (stage, state) pairs")
        layers.append(nxt)
    return layers


def solve_exact_dp(p: DDSProblem, max_states: int = 10**6) -> DPResult:
    """Backward induction over the reachable states; exact expected optimum."""
    layers = reachable_states(p, max_states)
    values: dict = {(p.horizon, s): 0.0 for s in layers[p.horizon]}
    policy: dict = {}
    for t in range(p.horizon - 1, -1, -1):
        for s in layers[t]:
            acts = p.feasible(t, s)
            qs = []
            for a in acts:
                future = sum(prob * values[(t + 1, s2)] for prob, s2 in p.outcomes(t, s, a) if prob > 0)
                qs.append(float(p.reward(t, s, a)) + future)
            k = _argmax_first(qs)
            policy[(t, s)] = acts[k]
            values[(t, s)] = qs[k]
    return DPResult(policy, values[(0, p.initial_state)], values)


def run_policy(p: DDSProblem, policy: dict, seed: int) -> Trajectory:
    s = p.initial_state
    states, actions, rewards = [s], [], []
    for t in range(p.horizon):
        a = policy[(t, s)]
        rewards.append(float(p.reward(t, s, a)))
        s = p.transition(t, s, a, stream(seed, "policy", t))
        actions.append(a)
        states.append(s)
    return Trajectory(tuple(states), tuple(actions), tuple(rewards))


def _random_rollout(p: DDSProblem, t: int, s: State, rng: np.random.Generator) -> float:
    total = 0.0
    for u in range(t, p.horizon):
        acts = p.feasible(u, s)
        a = acts[int(rng.integers(len(acts)))]
        total += float(p.reward(u, s, a))
        s = p.transition(u, s, a, rng)
    return total


def estimate_action_values(p: DDSProblem, t: int, s: State, rollouts: int, seed: int) -> list[float]:
    """Reward of each action plus the mean return of uniform-random continuations."""
    if rollouts < 1:
        raise ValueError("rollouts must be at least 1")
    acts = p.feasible(t, s)
    out = []
    for i, a in enumerate(acts):
        r = float(p.reward(t, s, a))
        if t + 1 == p.horizon:
            out.append(r)
            continue
        returns = []
        for k in range(rollouts):
            rng = stream(seed, "rollout", t, i, k)
            s2 = p.transition(t, s, a, rng)
            returns.append(_random_rollout(p, t + 1, s2, rng))
        out.append(r + math.fsum(returns) / rollouts)
    return out


def run_stochastic_dp(p: DDSProblem, rollouts: int, seed: int) -> Trajectory:
    """At each stage take the action with the best Monte-Carlo value estimate."""
    s = p.initial_state
    states, actions, rewards = [s], [], []
    for t in range(p.horizon):
        acts = p.feasible(t, s)
        k = _argmax_first(estimate_action_values(p, t, s, rollouts, seed))
        a = acts[k]
        rewards.append(float(p.reward(t, s, a)))
        s = p.transition(t, s, a, stream(seed, "mc-step", t))
        actions.append(a)
        states.append(s)
    return Trajectory(tuple(states), tuple(actions), tuple(rewards))
