"""Joy, growth and choice over a time series of metagraph snapshots.

Patterns are template isomorphism classes found by the miner. Between
consecutive snapshots ``t`` and ``t + 1``:

* joy is the fraction of the patterns of ``t`` still present at ``t + 1``,
* growth is the number of patterns new at ``t + 1``,
* choice is the drop in graphtropy of the snapshot's distinction view,
  clamped at zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ..cogproc.mining import mine_patterns, pattern_codes
from ..errors import TooFewSnapshots
from ..metagraph import Metagraph, distinction_view, graphtropy, read_graph


@dataclass(frozen=True)
class JGCStep:
    step: int
    joy: float
    growth: int
    choice: float


def _snapshot_graphtropy(g: Metagraph) -> float | None:
    dg = distinction_view(g)
    if len(dg) < 2:
        return None
    return graphtropy(dg)


def joy_growth_choice(
    snapshots: Sequence[Metagraph],
    max_template_size: int = 2,
    min_support: int = 2,
) -> list[JGCStep]:
    if len(snapshots) < 2:
        raise TooFewSnapshots("need at least two snapshots")
    codes = [pattern_codes(mine_patterns(g, max_template_size, min_support)) for g in snapshots]
    entropies = [_snapshot_graphtropy(g) for g in snapshots]
    out = []
    for t in range(len(snapshots) - 1):
        before, after = codes[t], codes[t + 1]
        joy = len(before & after) / max(1, len(before))
        growth = len(after - before)
        h0, h1 = entropies[t], entropies[t + 1]
        # fewer than two observations: no distinctions to lose
        choice = 0.0 if h0 is None or h1 is None else max(0.0, h0 - h1)
        out.append(JGCStep(t, joy, growth, choice))
    return out


def read_snapshots(directory) -> list[Metagraph]:
    """Every ``*.graph`` file in the directory, in file-name order."""
    paths = sorted(Path(directory).glob("*.graph"))
    return [read_graph(p) for p in paths]
