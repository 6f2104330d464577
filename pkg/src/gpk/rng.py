"""SplitMix64: a tiny, platform-independent 64-bit generator.

Every stochastic step in the package (instance generation, measurement
sampling, per-run seed derivation) draws from this generator so that results
are reproducible from a seed on any machine.

Algorithm (Steele, Lea & Flood 2014), all arithmetic mod 2**64::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)
"""

from __future__ import annotations

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB
MASK64 = (1 << 64) - 1


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return _mix(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection of the biased tail."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % bound

    def bits(self, k: int) -> int:
        """``k`` uniform bits (k <= 64) taken from the top of one draw."""
        if k == 0:
            return 0
        return self.next_u64() >> (64 - k)

    def uniform(self) -> float:
        """Float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def block(self, count: int) -> np.ndarray:
        """The next ``count`` outputs as a uint64 array; advances the state."""
        steps = np.arange(1, count + 1, dtype=np.uint64)
        z = np.uint64(self.state) + steps * np.uint64(GAMMA)
        self.state = (self.state + count * GAMMA) & MASK64
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MUL1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MUL2)
        return z ^ (z >> np.uint64(31))

    def permutation(self, count: int) -> np.ndarray:
        """Uniformly random permutation of ``range(count)`` (argsort of fresh keys)."""
        return np.argsort(self.block(count), kind="stable")

    def spawn(self) -> int:
        """A derived 64-bit seed for an independent sub-stream."""
        return self.next_u64()
