"""Deterministic seed derivation for nested experiment loops.

Every randomized stage (restart r of exponent index g of subsample s, ...)
gets its own integer seed derived from the user-facing base seed and the
stage's index path. Results are therefore independent of execution order
and safe to compute in parallel.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(base_seed: int, *path: int) -> int:
    """Derive a 64-bit child seed from ``base_seed`` and an index path."""
    entropy = [int(base_seed) & _MASK64] + [int(i) & _MASK64 for i in path]
    ss = np.random.SeedSequence(entropy)
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def rng_from(seed: int) -> np.random.Generator:
    """Generator for a derived seed (PCG64, numpy default)."""
    return np.random.default_rng(int(seed) & _MASK64)
