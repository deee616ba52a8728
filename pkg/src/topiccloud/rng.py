"""Seeded random stream shared by placement, color perturbation and k-means seeding.

The raw 64-bit words come from numpy's PCG64 bit generator (whose output
stream is stable across numpy releases). Bounded integers are drawn here by
masked rejection sampling so the mapping from raw words to results is fixed
by this module rather than by numpy's ``Generator`` methods.
"""

import numpy as np

_MASK64 = (1 << 64) - 1


class Stream:
    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._bits = np.random.PCG64(seed)

    def next_u64(self) -> int:
        return int(self._bits.random_raw())

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) with no modulo bias."""
        if n <= 0:
            raise ValueError("n must be positive")
        if n == 1:
            return 0
        mask = (1 << (n - 1).bit_length()) - 1
        while True:
            v = self.next_u64() & mask
            if v < n:
                return v

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def uniform(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits of one word."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))
