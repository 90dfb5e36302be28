"""Deterministic random-number streams.

Every consumer of randomness derives a counter-based generator from one
master seed plus an integer key tuple, so results are reproducible and
independent of scheduling or worker count.  Key namespaces:

* (NOISE, replication, scale, order)  - innovation draws in the simulator
* (CANDIDATES, index)                 - candidate memory profiles
* (POLE,)                             - the scenario pole draw
"""

from __future__ import annotations

import numpy as np

NOISE = 1
CANDIDATES = 2
POLE = 3


def substream(seed: int, *key: int) -> np.random.Generator:
    """Generator for the given master seed and stream key."""
    seq = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(seq))
