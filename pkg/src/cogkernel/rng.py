"""Counter-based random streams keyed by a derivation path.

Every stochastic routine asks for a generator with ``stream(seed, *path)``.
The path names *where* the randomness is consumed (``"episode", 17``), so the
numbers a given rollout sees do not depend on how many other rollouts ran
before it or in which order.
"""

from __future__ import annotations

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _component(part) -> int:
    if isinstance(part, (bool, np.bool_)):
        return int(part)
    if isinstance(part, (int, np.integer)):
        value = int(part)
        if value < 0:
            # keep negative ints distinct from small positive ones
            return (1 << 63) | (-value & ((1 << 63) - 1))
        return value & _MASK64
    return zlib.crc32(str(part).encode("utf-8")) | (1 << 62)


def stream(seed: int, *path) -> np.random.Generator:
    """Return an independent Philox generator for ``(seed, *path)``."""
    seq = np.random.SeedSequence(int(seed) & _MASK64, spawn_key=tuple(_component(p) for p in path))
    return np.random.Generator(np.random.Philox(seq))
