"""Deterministic pseudo-randomness for sampling and simulations.

The generator is SplitMix64 (Steele, Lea & Flood's public-domain mixer): the
state advances by the 64-bit golden-ratio constant and each output is the
finalizer of the new state.  This contract is fixed for the life of the
repository so that seeds reproduce bit-identical draws on every platform.

Integer draws below a bound use rejection sampling, which makes every residue
exactly equally likely; shuffles are Fisher-Yates on top of those draws.
"""

from __future__ import annotations

from typing import Iterable, Sequence

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """SplitMix64 stream seeded with a 64-bit integer (wider seeds are masked)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        return _finalize(self._state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) via rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = ((1 << 64) // bound) * bound
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def permutation(self, items: Iterable) -> tuple:
        out = list(items)
        self.shuffle(out)
        return tuple(out)

    def choice(self, items: Sequence):
        return items[self.below(len(items))]


def derive_seed(seed: int, index: int) -> int:
    """Per-trial seed: the (index+1)-th raw output of the stream started at seed.

    Sequential and parallel consumers agree on trial seeds without sharing a
    generator, which is what keeps batch runs order-independent.
    """
    if index < 0:
        raise ValueError("index must be nonnegative")
    return _finalize((seed + (index + 1) * _GOLDEN) & _MASK)
