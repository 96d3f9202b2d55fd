"""Portable pseudorandom stream.

Draws come straight from the raw 64-bit output of numpy's PCG64 bit generator
(PCG XSL-RR 128/64 seeded through ``SeedSequence``), whose stream is fixed
across numpy releases and platforms. Higher-level helpers are implemented
here rather than through ``Generator`` methods so the mapping from raw words
to values never changes underneath saved instances.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import TypeVar

import numpy as np

T = TypeVar("T")

_MASK64 = (1 << 64) - 1


class RandomStream:
    def __init__(self, seed: int) -> None:
        self.seed = seed & _MASK64
        self._bitgen = np.random.PCG64(self.seed)

    def next_u64(self) -> int:
        return int(self._bitgen.random_raw())

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.random()

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in the closed range [low, high]."""
        span = high - low + 1
        if span <= 0:
            raise ValueError("empty range")
        # rejection keeps the draw unbiased
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            word = self.next_u64()
            if word < limit:
                return low + word % span

    def sample(self, population: Sequence[T], k: int) -> list[T]:
        """k distinct elements drawn uniformly without replacement."""
        if not 0 <= k <= len(population):
            raise ValueError("sample size out of range")
        pool = list(population)
        for idx in range(k):
            swap = self.randint(idx, len(pool) - 1)
            pool[idx], pool[swap] = pool[swap], pool[idx]
        return pool[:k]
