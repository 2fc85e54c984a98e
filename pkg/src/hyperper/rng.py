"""Seeded 64-bit mixing stream shared by every generator in the package.

The state advances by a fixed odd increment and each output word is the
xor-shift-multiply finalizer of the new state, so a seed fully determines
the stream.  The three constants are documented in the README.  No library
RNG is involved, which keeps generated fixtures byte-stable across
platforms and interpreter versions.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1

INCREMENT = 0x9E3779B97F4A7C15
MULT1 = 0xBF58476D1CE4E5B9
MULT2 = 0x94D049BB133111EB


class SeedStream:
    """Deterministic stream of 64-bit words with integer-range helpers."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next64(self) -> int:
        self._state = (self._state + INCREMENT) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * MULT1) & _MASK
        z = ((z ^ (z >> 27)) * MULT2) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Draw from [0, bound).  bound may exceed 64 bits."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        # one word beyond the bound width keeps the modulo bias negligible
        words = (bound.bit_length() + 63) // 64 + 1
        x = 0
        for _ in range(words):
            x = (x << 64) | self.next64()
        return x % bound

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
