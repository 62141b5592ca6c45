"""Deterministic 64-bit PRNG used for dealing and agent decisions.

The generator is splitmix64: state advances by the golden-gamma constant
and the output is a finalizing mix of the new state. Shuffles use
Fisher-Yates with ``j = next() % (i + 1)``. Both are pinned here, byte
for byte, so that a seed deals the same cards in any reimplementation.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def splitmix64_next(state: int) -> tuple[int, int]:
    """Advance splitmix64; returns (new_state, output)."""
    state = (state + _GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def mix64(*parts: int) -> int:
    """Fold integers into one 64-bit seed (order-sensitive)."""
    acc = 0
    for p in parts:
        acc, out = splitmix64_next((acc ^ (p & MASK64)) & MASK64)
        acc = out
    return acc


def hash_text(text: str) -> int:
    """FNV-1a over UTF-8 bytes; stable across runs and platforms."""
    h = 0xCBF29CE484222325
    for b in text.encode("utf-8"):
        h = ((h ^ b) * 0x100000001B3) & MASK64
    return h


class SplitMix64:
    """Tiny sequential generator over the splitmix64 stream."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state, out = splitmix64_next(self._state)
        return out

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n); modulo bias is accepted and documented."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def random(self) -> float:
        # 53-bit mantissa from the top bits
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items: list) -> list:
        """In-place Fisher-Yates, high index down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items

    def choice_weighted(self, weights) -> int:
        total = float(sum(weights))
        if total <= 0:
            return self.below(len(weights))
        x = self.random() * total
        acc = 0.0
        for i, w in enumerate(weights):
            acc += w
            if x < acc:
                return i
        return len(weights) - 1
