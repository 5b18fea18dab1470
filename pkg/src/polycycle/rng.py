"""Deterministic 64-bit pseudo-random generator (SplitMix64).

Instance generation must reproduce byte-identical output from a seed across
platforms and implementations, so the generator is pinned by algorithm and
constants rather than delegating to platform randomness. SplitMix64 is the
finalizer-based generator of Steele, Lea and Flood; constants below are the
standard published ones.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(value: int) -> int:
    """One SplitMix64 finalizer round; also used to derive sub-seeds."""
    z = (value + _GAMMA) & _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound); plain modulo reduction, which is
        part of the pinned algorithm (bias is irrelevant at these bounds)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def randint(self, lo: int, hi: int) -> int:
        """Integer in the closed range [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def shuffle(self, items: list) -> None:
        """Fisher-Yates shuffle in place."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def derive_seed(*parts: int) -> int:
    """Deterministically combine integers into one 64-bit sub-seed."""
    acc = 0
    for part in parts:
        acc = mix64(acc ^ (part & _MASK))
    return acc
