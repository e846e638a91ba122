"""Perfect hash families: maps ``0..n-1 -> 0..k-1`` such that every set of at
most ``k`` points is mapped injectively by some member.

Candidates use the two-level scheme ``x -> g((a*x mod p) mod k^2)`` with a
prime ``p > n`` and a seeded inner map ``g: [k^2] -> [k]``.  While the
``k``-subsets can be listed, members are picked greedily (best of a batch
of candidates on the still unsplit subsets) until every subset is split, so
the result is perfect by construction.  Beyond that size the family is a
fixed number of candidates that is perfect with overwhelming probability.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

EXHAUSTIVE_LIMIT = 2_000_000
BATCH = 32


@dataclass(frozen=True)
class HashFamily:
    n: int
    k: int
    functions: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def splits(self, subset) -> bool:
        subset = list(subset)
        return any(len({h[x] for x in subset}) == len(subset) for h in self.functions)

    def is_perfect(self) -> bool:
        if self.n == 0:
            return True
        subs = np.array(list(itertools.combinations(range(self.n), self.k)), dtype=np.int64)
        left = np.ones(len(subs), dtype=bool)
        for h in self.functions:
            left &= ~_split_mask(np.asarray(h), subs)
        return not left.any()


def _next_prime(m: int) -> int:
    while any(m % d == 0 for d in range(2, math.isqrt(m) + 1)) or m < 2:
        m += 1
    return m


def _split_mask(h: np.ndarray, subs: np.ndarray) -> np.ndarray:
    vals = np.sort(h[subs], axis=1)
    return (np.diff(vals, axis=1) != 0).all(axis=1)


class _Candidates:
    def __init__(self, n: int, k: int, seed: int):
        self.n, self.k = n, k
        self.m = k * k
        self.p = _next_prime(max(n, self.m) + 1)
        self.rng = random.Random(seed * 1_000_003 + n * 101 + k)

    def draw(self) -> np.ndarray:
        a = self.rng.randrange(1, self.p)
        g = [self.rng.randrange(self.k) for _ in range(self.m)]
        return np.array([g[(a * x % self.p) % self.m] for x in range(self.n)], dtype=np.int64)


def _greedy_cover(n: int, k: int, seed: int) -> list[tuple[int, ...]]:
    subs = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64)
    gen = _Candidates(n, k, seed)
    chosen: list[tuple[int, ...]] = []
    while len(subs):
        best, best_mask, best_hits = None, None, 0
        for _ in range(BATCH):
            h = gen.draw()
            mask = _split_mask(h, subs)
            hits = int(mask.sum())
            if hits > best_hits:
                best, best_mask, best_hits = h, mask, hits
        if best is None:
            # make the first unsplit subset injective by hand
            h = gen.draw()
            h[subs[0]] = np.arange(k)
            best, best_mask = h, _split_mask(h, subs)
        chosen.append(tuple(int(v) for v in best))
        subs = subs[~best_mask]
    return chosen


def _random_family(n: int, k: int, seed: int) -> list[tuple[int, ...]]:
    # each member splits a fixed k-set with probability >= k!/k^k for a random
    # inner map; this many members leave a given set unsplit with probability
    # at most exp(-40) / C(n, k)
    q = math.factorial(k) / k ** k
    size = math.ceil((math.log(math.comb(n, k)) + 40) / q)
    gen = _Candidates(n, k, seed)
    return [tuple(int(v) for v in gen.draw()) for _ in range(size)]


@functools.lru_cache(maxsize=512)
def build(n: int, k: int, seed: int = 0) -> HashFamily:
    """A perfect family ``[n] -> [k]``; requires ``1 <= k <= n`` (or ``n == 0``)."""
    if n == 0:
        return HashFamily(0, k, ((),))
    if k > n:
        raise ValueError(f"range {k} larger than domain {n}")
    if k < 1:
        raise ValueError("range must be at least 1")
    if k == 1:
        return HashFamily(n, 1, ((0,) * n,))
    if k == n:
        return HashFamily(n, k, (tuple(range(n)),))
    if math.comb(n, k) <= EXHAUSTIVE_LIMIT:
        return HashFamily(n, k, tuple(_greedy_cover(n, k, seed)))
    return HashFamily(n, k, tuple(_random_family(n, k, seed)))


def size_bound(n: int, k: int) -> int:
    """Documented ceiling on family size: ``4 * e^k * k * log2(n+2)^2``."""
    return math.ceil(4 * math.e ** k * k * max(1.0, math.log2(n + 2)) ** 2)
