"""Finite deterministic transducer environments and enumerated classes.

An environment is a table: in state ``s`` action ``a`` leads to
``next_state[s][a]``, the agent perceives that next state, and the reward at
step ``t`` (counting from 1) is ``base[s][a] * 2**-t``. With ``base`` in
``[0, 1]`` the rewards of any interaction sum to less than 1.

The description length used for the prior is the size of a canonical
binary encoding of the table: Elias-gamma coded state and action counts,
then for each entry the next state in ``ceil(log2 n_states)`` bits and the
base reward as a dyadic fraction ``k / 2**m`` (``m`` Elias-gamma coded as
``m + 1``, followed by ``m`` bits of ``k`` beyond the leading position).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ..decision.dds import DDSProblem


def elias_gamma_length(n: int) -> int:
    if n < 1:
        raise ValueError("Elias gamma codes positive integers")
    return 2 * (n.bit_length() - 1) + 1


def dyadic_length(value: float) -> int:
    """Bits for a dyadic rational ``k / 2**m`` in [0, 1]."""
    frac = Fraction(value)
    if not 0 <= frac <= 1:
        raise ValueError(f"{value!r} is outside [0, 1]")
    if frac.denominator & (frac.denominator - 1):
        raise ValueError(f"{value!r} is not a dyadic rational")
    m = frac.denominator.bit_length() - 1
    return elias_gamma_length(m + 1) + m


@dataclass(frozen=True)
class EnvironmentSpec:
    next_state: tuple[tuple[int, ...], ...]
    base: tuple[tuple[float, ...], ...]
    n_obs: int = 2
    start: int = 0
    name: str = ""

    def __post_init__(self):
        n = len(self.next_state)
        if n == 0 or len(self.base) != n:
            raise ValueError("transition and reward tables must cover the same states")
        widths = {len(row) for row in self.next_state} | {len(row) for row in self.base}
        if len(widths) != 1:
            raise ValueError("every state needs the same number of actions")
        for row in self.next_state:
            for s in row:
                if not 0 <= s < n:
                    raise ValueError("next state out of range")
        for row in self.base:
            for r in row:
                if not 0.0 <= r <= 1.0:
                    raise ValueError("base rewards must lie in [0, 1]")
        if self.n_obs < n:
            raise ValueError("the perception alphabet must cover every state")

    @property
    def n_states(self) -> int:
        return len(self.next_state)

    @property
    def n_actions(self) -> int:
        return len(self.next_state[0])

    def step(self, s: int, a: int, t: int) -> tuple[int, int, float]:
        """``(next_state, observation, reward)`` for step ``t`` (1-based)."""
        nxt = self.next_state[s][a]
        return nxt, nxt, self.base[s][a] * 2.0**-t

    def description_length(self) -> int:
        state_bits = math.ceil(math.log2(self.n_states)) if self.n_states > 1 else 0
        bits = elias_gamma_length(self.n_states) + elias_gamma_length(self.n_actions)
        for s in range(self.n_states):
            for a in range(self.n_actions):
                bits += state_bits + dyadic_length(self.base[s][a])
        return bits

    def as_dds(self, horizon: int) -> DDSProblem:
        """The environment as a decision problem with the discounted reward schedule."""
        return DDSProblem(
            horizon,
            self.start,
            lambda t, s: list(range(self.n_actions)),
            lambda t, s, a: self.base[s][a] * 2.0 ** -(t + 1),
            lambda t, s, a: [(1.0, self.next_state[s][a])],
            name=self.name or "environment",
        )


@dataclass(frozen=True)
class EnvironmentClass:
    environments: tuple[EnvironmentSpec, ...]
    weights: tuple[float, ...]

    @classmethod
    def with_complexity_prior(cls, envs) -> "EnvironmentClass":
        envs = tuple(envs)
        if not envs:
            raise ValueError("environment class is empty")
        raw = [2.0 ** -e.description_length() for e in envs]
        total = math.fsum(raw)
        return cls(envs, tuple(w / total for w in raw))

    def __len__(self) -> int:
        return len(self.environments)


def tiny2_class() -> EnvironmentClass:
    """Every environment with one or two states, two actions and 0/1 base rewards."""
    envs = []
    for rewards in product((0.0, 1.0), repeat=2):
        envs.append(EnvironmentSpec(((0, 0),), (tuple(rewards),), name=f"1s-r{''.join(str(int(r)) for r in rewards)}"))
    for nxt in product((0, 1), repeat=4):
        for rewards in product((0.0, 1.0), repeat=4):
            envs.append(
                EnvironmentSpec(
                    ((nxt[0], nxt[1]), (nxt[2], nxt[3])),
                    ((rewards[0], rewards[1]), (rewards[2], rewards[3])),
                    name="2s-n{}-r{}".format("".join(map(str, nxt)), "".join(str(int(r)) for r in rewards)),
                )
            )
    return EnvironmentClass.with_complexity_prior(envs)


ENV_CLASSES = {"tiny2": tiny2_class}
