"""Built-in decision problems."""

from __future__ import annotations

from .dds import DDSProblem

MYOPIC = "myopic"
PATIENT = "patient"


def deceptive_chain() -> DDSProblem:
    """Two stages. Grabbing 1 now leads to a dead end; waiting leads to a state worth 5."""

    def actions(t, s):
        return {"start": [MYOPIC, PATIENT], "trap": ["idle"], "good": ["collect", "waste"]}[s]

    def reward(t, s, a):
        return {MYOPIC: 1.0, PATIENT: 0.0, "idle": 0.0, "collect": 5.0, "waste": 0.0}[a]

    def outcomes(t, s, a):
        if s == "start":
            return [(1.0, "trap" if a == MYOPIC else "good")]
        return [(1.0, "end")]

    return DDSProblem(2, "start", actions, reward, outcomes, name="deceptive-chain")


GRID_MOVES = {"N": (0, 1), "S": (0, -1), "E": (1, 0), "W": (-1, 0)}


def gridworld(size: int = 3, horizon: int = 6, slip: float = 0.2) -> DDSProblem:
    """Walk from the corner (0, 0) to (size-1, size-1); moves slip (stay put) with probability ``slip``.

    Entering the goal pays 1, every other step costs 0.1, and the goal is absorbing.
    """
    goal = (size - 1, size - 1)

    def actions(t, s):
        return ["stay"] if s == goal else list(GRID_MOVES)

    def target(s, a):
        dx, dy = GRID_MOVES[a]
        x, y = s[0] + dx, s[1] + dy
        return (x, y) if 0 <= x < size and 0 <= y < size else s

    def outcomes(t, s, a):
        if s == goal:
            return [(1.0, s)]
        moved = target(s, a)
        if moved == s:
            return [(1.0, s)]
        return [(1.0 - slip, moved), (slip, s)]

    def reward(t, s, a):
        if s == goal:
            return 0.0
        moved = target(s, a)
        return (1.0 - slip) * 1.0 - 0.1 if moved == goal else -0.1

    return DDSProblem(horizon, (0, 0), actions, reward, outcomes, name="gridworld")


BUILTIN_PROBLEMS = {"deceptive-chain": deceptive_chain, "gridworld": gridworld}
