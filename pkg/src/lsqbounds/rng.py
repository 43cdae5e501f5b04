"""Deterministic substream derivation for parallel Monte Carlo.

Every trial gets its own counter-based generator keyed by a 64-bit value
derived from (master_seed, index) through the SplitMix64 finalizer. Streams
are therefore bit-reproducible regardless of how trials are scheduled
across workers.
"""

from __future__ import annotations

import numpy as np

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15  # 2^64 / golden ratio


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer; a bijection on 64-bit integers."""
    z = x & _MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


def substream_key(master_seed: int, index: int) -> int:
    """64-bit Philox key for substream `index` of `master_seed`."""
    return splitmix64((master_seed ^ (_GOLDEN * index)) & _MASK64)


def substream(master_seed: int, index: int) -> np.random.Generator:
    """Independent, reproducible generator for one trial.

    Distinct (master_seed, index) pairs map to distinct Philox keys via
    SplitMix64, so first outputs differ whenever either argument differs.
    """
    return np.random.Generator(np.random.Philox(key=substream_key(master_seed, index)))


def normal_sample(stream: np.random.Generator) -> float:
    """One standard normal draw."""
    return float(stream.standard_normal())


def chi2_sample(dof: int, stream: np.random.Generator) -> float:
    """One chi-square draw; dof = 0 is the empty sum and returns 0 exactly."""
    if dof < 0:
        raise ValueError("dof must be non-negative")
    if dof == 0:
        return 0.0
    return float(stream.chisquare(dof))
