"""Derived random streams.

Every random draw in the package comes from a generator keyed on a master
seed plus a tuple of integer labels, so that results do not depend on the
order in which independent pieces of work are executed.
"""

import numpy as np


def rng_for(seed: int, *keys: int) -> np.random.Generator:
    """Generator for the stream labelled ``keys`` under master ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.default_rng(ss)


def derive_seed(seed: int, *keys: int) -> int:
    """A 63-bit integer seed derived from ``seed`` and ``keys``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))
