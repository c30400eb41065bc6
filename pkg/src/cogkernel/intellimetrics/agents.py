"""Agents for finite environments.

An agent is reset at the start of every episode and then asked, at each
step, for a distribution over actions given the interaction history, a
tuple of ``(action, observation, reward)``. Agents report their
elementary decision steps to a :class:`StepMeter`; the episode runner adds
one step per decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from ..decision.dds import solve_exact_dp
from ..errors import BudgetTooLarge
from .envs import EnvironmentSpec


@dataclass
class StepMeter:
    steps: int = 0

    def tick(self, n: int = 1) -> None:
        self.steps += n


def _one_hot(n: int, k: int) -> np.ndarray:
    p = np.zeros(n)
    p[k] = 1.0
    return p


class Agent:
    name = "agent"

    def reset(self, env: EnvironmentSpec, horizon: int) -> None:
        """Start an episode. Only the alphabet sizes and the first observation may be used,
        except by the oracle agent."""
        self.n_actions = env.n_actions
        self.n_obs = env.n_obs
        self.first_obs = env.start
        self.horizon = horizon

    def distribution(self, history: tuple, meter: StepMeter) -> np.ndarray:
        raise NotImplementedError

    def current_obs(self, history: tuple) -> int:
        return history[-1][1] if history else self.first_obs


class RandomAgent(Agent):
    name = "random"

    def distribution(self, history, meter):
        return np.full(self.n_actions, 1.0 / self.n_actions)


class ConstantAgent(Agent):
    def __init__(self, action: int = 0):
        self.action = action
        self.name = f"constant{action}"

    def distribution(self, history, meter):
        return _one_hot(self.n_actions, self.action)


class GreedyAgent(Agent):
    """Myopic: best observed immediate reward for the current observation.

    Untried actions count as reward 1, so each is tried once.
    """

    name = "greedy"

    def distribution(self, history, meter):
        obs = self.first_obs
        seen: dict = {}
        for t, (a, o, r) in enumerate(history, start=1):
            seen[(obs, a)] = r * 2.0**t
            obs = o
        values = []
        for a in range(self.n_actions):
            meter.tick()
            values.append(seen.get((obs, a), 1.0))
        return _one_hot(self.n_actions, int(np.argmax(values)))


class OptimalAgent(Agent):
    """Oracle that knows the environment and follows its exact optimal policy."""

    name = "optimal"

    def __init__(self):
        self._cache: dict = {}

    def reset(self, env, horizon):
        super().reset(env, horizon)
        key = (env, horizon)
        if key not in self._cache:
            self._cache[key] = solve_exact_dp(env.as_dds(horizon)).policy
        self.policy = self._cache[key]

    def distribution(self, history, meter):
        t = len(history)
        return _one_hot(self.n_actions, self.policy[(t, self.current_obs(history))])


class BruteForceAgent(Agent):
    """Bounded brute-force search over small policy tables.

    Candidate policies are lookup tables from the last ``d`` observations
    (``d`` up to ``window``) to actions whose size fits in ``max_table_bits``.
    At every step each table is simulated on an empirical model built from
    the episode so far, for up to ``sim_depth`` steps with the environment's
    halving reward weights, and the agent follows the best table (the first
    one in enumeration order on ties). Untried observation-action pairs are
    assumed to pay base reward 1 and to keep the observation unchanged,
    which drives exploration.
    """

    name = "brute"

    def __init__(self, max_table_bits: int = 4, window: int = 1, sim_depth: int = 8, optimistic: bool = True):
        if max_table_bits > 16:
            raise BudgetTooLarge("at most 16 table bits can be enumerated")
        self.max_table_bits = max_table_bits
        self.window = window
        self.sim_depth = sim_depth
        self.optimistic = optimistic
        self._tables_for: dict = {}

    def tables(self, n_obs: int, n_actions: int) -> list[tuple[int, dict]]:
        """``(depth, table)`` pairs in enumeration order."""
        key = (n_obs, n_actions)
        if key in self._tables_for:
            return self._tables_for[key]
        bits_per_entry = max(1, (n_actions - 1).bit_length())
        out = []
        for depth in range(self.window + 1):
            windows = list(product(range(n_obs), repeat=depth))
            if len(windows) * bits_per_entry > self.max_table_bits:
                break
            for acts in product(range(n_actions), repeat=len(windows)):
                out.append((depth, dict(zip(windows, acts))))
        if not out:
            raise BudgetTooLarge(f"no policy table fits in {self.max_table_bits} bits")
        self._tables_for[key] = out
        return out

    def reset(self, env, horizon):
        super().reset(env, horizon)
        self.candidates = self.tables(env.n_obs, env.n_actions)

    def _model(self, history):
        counts: dict = {}
        rewards: dict = {}
        obs = self.first_obs
        for t, (a, o, r) in enumerate(history, start=1):
            counts.setdefault((obs, a), {}).setdefault(o, 0)
            counts[(obs, a)][o] += 1
            rewards.setdefault((obs, a), []).append(r * 2.0**t)
            obs = o
        model = {}
        for key, nexts in counts.items():
            modal = min(nexts, key=lambda o: (-nexts[o], o))
            model[key] = (modal, sum(rewards[key]) / len(rewards[key]))
        return model

    def distribution(self, history, meter):
        model = self._model(history)
        observations = [self.first_obs] + [o for _, o, _ in history]
        depth = min(self.sim_depth, self.horizon - len(history))
        best_score = -1.0
        best_action = 0
        for d, table in self.candidates:
            obs_seq = list(observations)
            score = 0.0
            first = None
            for k in range(1, depth + 1):
                meter.tick()
                win = tuple(obs_seq[-d:]) if d else ()
                if len(win) < d:
                    win = (self.first_obs,) * (d - len(win)) + win
                a = table[win]
                if first is None:
                    first = a
                o = obs_seq[-1]
                if (o, a) in model:
                    nxt, base = model[(o, a)]
                elif self.optimistic:
                    nxt, base = o, 1.0
                else:
                    nxt, base = o, 0.0
                score += base * 2.0**-k
                obs_seq.append(nxt)
            if score > best_score:
                best_score, best_action = score, first
        return _one_hot(self.n_actions, best_action)


def make_agent(kind: str, **kwargs) -> Agent:
    if kind == "random":
        return RandomAgent()
    if kind == "greedy":
        return GreedyAgent()
    if kind == "optimal":
        return OptimalAgent()
    if kind == "brute":
        return BruteForceAgent(**kwargs)
    if kind.startswith("constant"):
        return ConstantAgent(int(kind[len("constant"):] or 0))
    raise ValueError(f"unknown agent {kind!r}")


AGENT_KINDS = ("random", "greedy", "brute", "optimal")
