"""Permutations of a finite domain ``0..n-1``.

Composition is applied left to right: ``u^(ab) = (u^a)^b``, so
``compose(a, b).images[u] == b.images[a.images[u]]``.  ``a * b`` is the same
product.  Every value is an immutable, hashable tuple wrapper.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class DomainMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Domain:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("domain size must be non-negative")

    def points(self) -> range:
        return range(self.n)


class Permutation:
    """A bijection of ``0..n-1`` stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {list(images)}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __reduce__(self):
        return (Permutation, (self.images, False))

    # construction -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build a permutation from disjoint cycles, e.g. ``[(0, 1, 2), (4, 5)]``."""
        imgs = list(range(n))
        seen = set()
        for cyc in cycles:
            cyc = list(cyc)
            for p in cyc:
                if p in seen or not 0 <= p < n:
                    raise ValueError(f"bad cycle {cyc} for n={n}")
                seen.add(p)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                imgs[a] = b
        return cls(tuple(imgs))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse cycle notation ``"(0 1 2)(4 5)"`` or an image list ``"[1, 2, 0]"``."""
        text = text.strip()
        if text.startswith("["):
            imgs = [int(tok) for tok in re.findall(r"-?\d+", text)]
            if n is not None and len(imgs) != n:
                raise DomainMismatch(f"image list has length {len(imgs)}, expected {n}")
            return cls(tuple(imgs))
        if re.fullmatch(r"(\(\s*(\d+([\s,]+\d+)*)?\s*\)\s*)*", text) is None:
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = [
            [int(tok) for tok in re.split(r"[\s,]+", body.strip())]
            for body in re.findall(r"\(([^)]*)\)", text)
            if body.strip()
        ]
        top = max((max(c) for c in cycles), default=-1) + 1
        if n is None:
            n = top
        elif top > n:
            raise DomainMismatch(f"point {top - 1} outside domain of size {n}")
        return cls.from_cycles(n, cycles)

    # basic queries ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, u: int) -> int:
        return self.images[u]

    def __len__(self) -> int:
        return len(self.images)

    def is_identity(self) -> bool:
        return all(i == u for i, u in enumerate(self.images))

    def support(self) -> frozenset[int]:
        return frozenset(u for u, v in enumerate(self.images) if u != v)

    def weight(self) -> int:
        return sum(1 for u, v in enumerate(self.images) if u != v)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point, sorted."""
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start] or self.images[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            v = self.images[start]
            while v != start:
                seen[v] = True
                cyc.append(v)
                v = self.images[v]
            out.append(tuple(cyc))
        return out

    def complexity(self) -> int:
        """Minimum number of transpositions whose product is this permutation."""
        return self.weight() - len(self.cycles())

    # algebra ------------------------------------------------------------

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for u, v in enumerate(self.images):
            inv[v] = u
        return Permutation(inv, check=False)

    def conjugate(self, r: "Permutation") -> "Permutation":
        """``r^-1 * self * r``; its cycles are the ``r``-images of ours."""
        return conjugate(self, r)

    def restricted_to(self, points: Iterable[int]) -> "Permutation":
        """Permutation agreeing with self on ``points`` (which must be invariant) and fixing the rest."""
        imgs = list(range(self.n))
        for u in points:
            imgs[u] = self.images[u]
        return Permutation(tuple(imgs))

    # text forms ---------------------------------------------------------

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __str__(self) -> str:
        return self.cycle_string()

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, n={self.n})"

    def to_list(self) -> list[int]:
        return list(self.images)


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple[tuple[int, ...], ...]

    def points(self) -> frozenset[int]:
        return frozenset(p for c in self.cycles for p in c)


def _check_same(a: Permutation, b: Permutation) -> None:
    if a.n != b.n:
        raise DomainMismatch(f"domain sizes differ: {a.n} vs {b.n}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Apply ``a`` then ``b``."""
    _check_same(a, b)
    bi = b.images
    return Permutation([bi[x] for x in a.images], check=False)


def compose_all(perms: Iterable[Permutation], n: int) -> Permutation:
    out = Permutation.identity(n)
    for p in perms:
        out = compose(out, p)
    return out


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def conjugate(p: Permutation, r: Permutation) -> Permutation:
    _check_same(p, r)
    return compose(compose(r.inverse(), p), r)


def support(p: Permutation) -> frozenset[int]:
    return p.support()


def weight(p: Permutation) -> int:
    return p.weight()


def cayley_complexity(p: Permutation) -> int:
    return p.complexity()


def cycle_decomposition(p: Permutation) -> CycleDecomposition:
    return CycleDecomposition(tuple(p.cycles()))


def transposition(n: int, a: int, b: int) -> Permutation:
    imgs = list(range(n))
    imgs[a], imgs[b] = b, a
    return Permutation(tuple(imgs))
