"""Monte-Carlo estimators of expected reward, universal and pragmatic
intelligence, their effort-normalised variant, and intellectual breadth.

Episode ``k`` of context ``c`` always draws from ``stream(seed, "episode", c, k)``,
so estimates do not depend on evaluation order.

Means over trials are taken as ``x0 + fsum(x - x0) / n``, which returns a
constant sample exactly.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ..errors import NoAdmissibleContext, ZeroCompetence
from ..rng import stream
from .agents import Agent, StepMeter
from .envs import EnvironmentClass, EnvironmentSpec

Segment = tuple  # ((action, observation, reward), ...)


@dataclass(frozen=True)
class GoalSpec:
    """A goal scores the latest step of a segment; ``scales`` are the admissible segment lengths.

    Step rewards must not exceed ``2**-t`` at step ``t`` so totals stay below 1.
    """

    name: str
    step_reward: Callable[[Segment], float]
    scales: tuple[int, ...] = (2, 4, 8)

    def tau(self, n: int) -> bool:
        return n in self.scales


def env_reward_goal(scales=(2, 4, 8)) -> GoalSpec:
    return GoalSpec("env-reward", lambda seg: seg[-1][2], scales)


def reach_state_goal(target: int = 1, scales=(2, 4, 8)) -> GoalSpec:
    def step_reward(seg):
        if seg[-1][1] != target or any(o == target for _, o, _ in seg[:-1]):
            return 0.0
        return 2.0 ** -len(seg)

    return GoalSpec(f"reach-state-{target}", step_reward, scales)


def observation_count_goal(target: int = 1, scales=(2, 4, 8)) -> GoalSpec:
    return GoalSpec(f"observe-{target}", lambda seg: 2.0 ** -len(seg) if seg[-1][1] == target else 0.0, scales)


def default_goals() -> tuple[GoalSpec, ...]:
    return (reach_state_goal(), observation_count_goal())


def exact_mean(values: Sequence[float]) -> float:
    if not values:
        return 0.0
    x0 = values[0]
    return x0 + math.fsum(v - x0 for v in values) / len(values)


def run_episode(
    env: EnvironmentSpec,
    agent: Agent,
    horizon: int,
    rng: np.random.Generator,
    goal: GoalSpec | None = None,
) -> tuple[float, int]:
    """One interaction; returns ``(total reward, decision steps)``."""
    agent.reset(env, horizon)
    meter = StepMeter()
    s = env.start
    history: list = []
    rewards = []
    for t in range(1, horizon + 1):
        meter.tick()
        p = agent.distribution(tuple(history), meter)
        if np.count_nonzero(p) == 1:
            a = int(np.flatnonzero(p)[0])
        else:
            a = int(rng.choice(len(p), p=p))
        s, o, r = env.step(s, a, t)
        history.append((a, o, r))
        rewards.append(r if goal is None else float(goal.step_reward(tuple(history))))
    return math.fsum(rewards), meter.steps


@dataclass(frozen=True)
class EpisodeStats:
    mean: float
    stderr: float
    efficiency: float  # mean of value / steps over trials
    mean_steps: float
    trials: int

    @property
    def variance_of_mean(self) -> float:
        return self.stderr**2


def _stats(values: list[float], steps: list[int]) -> EpisodeStats:
    n = len(values)
    mean = exact_mean(values)
    var = float(np.var(values, ddof=1)) if n > 1 else 0.0
    eff = exact_mean([v / q for v, q in zip(values, steps)])
    return EpisodeStats(mean, math.sqrt(var / n), eff, exact_mean([float(q) for q in steps]), n)


def context_stats(
    env: EnvironmentSpec,
    agent: Agent,
    horizon: int,
    trials: int,
    seed: int,
    context: int = 0,
    goal: GoalSpec | None = None,
) -> EpisodeStats:
    values, steps = [], []
    for k in range(trials):
        v, q = run_episode(env, agent, horizon, stream(seed, "episode", context, k), goal)
        values.append(v)
        steps.append(q)
    return _stats(values, steps)


def expected_reward(env: EnvironmentSpec, agent: Agent, horizon: int, trials: int, seed: int) -> EpisodeStats:
    """Monte-Carlo estimate of the expected total reward."""
    if horizon < 1 or trials < 1:
        raise ValueError("horizon and trials must be at least 1")
    return context_stats(env, agent, horizon, trials, seed)


@dataclass(frozen=True)
class IntelligenceEstimate:
    value: float
    stderr: float
    contexts: int
    trials: int


@dataclass(frozen=True)
class Context:
    env_index: int
    goal: GoalSpec | None
    length: int
    weight: float


def _allocation(m: int, trials: int) -> list[int]:
    return [trials // m + (1 if i < trials % m else 0) for i in range(m)]


def _estimate(contexts: list[Context], env_class: EnvironmentClass, agent: Agent, trials: int, seed: int, efficient: bool):
    """Stratified over contexts when they fit in ``trials``, otherwise sampled by weight."""
    m = len(contexts)
    if m <= trials:
        total = 0.0
        var = 0.0
        for ci, (c, n) in enumerate(zip(contexts, _allocation(m, trials))):
            st = context_stats(env_class.environments[c.env_index], agent, c.length, n, seed, ci, c.goal)
            value = st.efficiency if efficient else st.mean
            total += c.weight * value
            if efficient:
                # spread of value/steps is not tracked per trial; use the reward spread scaled by mean steps
                var += (c.weight * st.stderr / max(st.mean_steps, 1.0)) ** 2
            else:
                var += (c.weight * st.stderr) ** 2
        return IntelligenceEstimate(total, math.sqrt(var), m, trials)
    weights = np.array([c.weight for c in contexts])
    total_weight = math.fsum(weights)
    rng = stream(seed, "context-sample")
    picks = rng.choice(m, size=trials, p=weights / weights.sum())
    samples = []
    for k, ci in enumerate(picks):
        c = contexts[int(ci)]
        v, q = run_episode(env_class.environments[c.env_index], agent, c.length, stream(seed, "episode", int(ci), k), c.goal)
        samples.append(v / q if efficient else v)
    sd = float(np.std(samples, ddof=1)) if trials > 1 else 0.0
    return IntelligenceEstimate(total_weight * exact_mean(samples), total_weight * sd / math.sqrt(trials), m, trials)


def universal_intelligence(
    env_class: EnvironmentClass, agent: Agent, horizon: int, trials: int, seed: int
) -> IntelligenceEstimate:
    """``sum_mu nu(mu) V_mu``: complexity-weighted expected reward over the class."""
    contexts = [Context(i, None, horizon, w) for i, w in enumerate(env_class.weights)]
    return _estimate(contexts, env_class, agent, trials, seed, efficient=False)


def pragmatic_contexts(env_class: EnvironmentClass, goals: Sequence[GoalSpec]) -> list[Context]:
    """Admissible ``(environment, goal, length)`` triples weighted by ``nu * gamma * tau``.

    ``gamma`` is uniform over the goals.
    """
    contexts = []
    gamma = 1.0 / len(goals) if goals else 0.0
    lengths = sorted({n for g in goals for n in g.scales})
    for i, nu in enumerate(env_class.weights):
        for goal in goals:
            for n in lengths:
                if goal.tau(n):
                    contexts.append(Context(i, goal, n, nu * gamma))
    if not contexts:
        raise NoAdmissibleContext("no (environment, goal, time scale) has tau = 1")
    return contexts


def pragmatic_intelligence(
    env_class: EnvironmentClass, goals: Sequence[GoalSpec], agent: Agent, trials: int, seed: int
) -> IntelligenceEstimate:
    return _estimate(pragmatic_contexts(env_class, goals), env_class, agent, trials, seed, efficient=False)


def efficient_pragmatic_intelligence(
    env_class: EnvironmentClass, goals: Sequence[GoalSpec], agent: Agent, trials: int, seed: int
) -> IntelligenceEstimate:
    """As :func:`pragmatic_intelligence` with each trial's value divided by its step count."""
    return _estimate(pragmatic_contexts(env_class, goals), env_class, agent, trials, seed, efficient=True)


def breadth_from_competence(weights: Sequence[float], competence: Sequence[float]) -> float:
    """Entropy (nats) of the distribution proportional to ``weight * competence``."""
    w = np.asarray(weights, dtype=float) * np.asarray(competence, dtype=float)
    if np.any(w < 0):
        raise ValueError("weights and competences must be non-negative")
    total = w.sum()
    if total <= 0:
        raise ZeroCompetence("competence is zero in every context")
    # equal weights are grouped and ratios taken in exact rationals, so a uniform profile gives ln m exactly
    groups = Counter(Fraction(float(v)) for v in w if v > 0)
    exact_total = sum(v * c for v, c in groups.items())
    return math.fsum(float(c * v / exact_total) * math.log(float(exact_total / v)) for v, c in groups.items())


def intellectual_breadth(
    env_class: EnvironmentClass, goals: Sequence[GoalSpec], agent: Agent, trials: int, seed: int
) -> float:
    """Entropy of the agent's competence profile; each context gets ``max(1, trials // contexts)`` episodes."""
    contexts = pragmatic_contexts(env_class, goals)
    per = max(1, trials // len(contexts))
    competence = []
    for ci, c in enumerate(contexts):
        st = context_stats(env_class.environments[c.env_index], agent, c.length, per, seed, ci, c.goal)
        competence.append(st.efficiency)
    return breadth_from_competence([c.weight for c in contexts], competence)
