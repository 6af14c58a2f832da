"""Deterministic 64-bit PRNG used for dataset splits and forest training.

SplitMix64 is small enough to re-implement identically in any language,
which keeps shuffles and bootstrap samples reproducible across ports of
this toolkit. The update rule, for 64-bit wrapping arithmetic:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output = z ^ (z >> 31)

Derived conventions (documented because they are part of the
reproducibility contract):

* ``randbelow(n)`` is ``next_u64() % n``.
* ``shuffle`` is a Fisher-Yates pass from the last index down to 1,
  swapping index ``i`` with ``randbelow(i + 1)``.
* ``sample_indices(n, k)`` partially shuffles ``[0..n)`` taking the first
  ``k`` entries, then sorts them ascending.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Seeded stream of pseudo-random 64-bit integers."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randbelow(self, n: int) -> int:
        """Integer in [0, n). Modulo bias is negligible for n << 2**64."""
        if n <= 0:
            raise ValueError("randbelow requires n >= 1")
        return self.next_u64() % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from [0, n), returned in ascending order."""
        if not 0 <= k <= n:
            raise ValueError("need 0 <= k <= n")
        pool = list(range(n))
        for i in range(k):
            j = i + self.randbelow(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:k])

    def bootstrap_indices(self, n: int) -> list[int]:
        """n indices drawn from [0, n) with replacement."""
        return [self.randbelow(n) for _ in range(n)]
