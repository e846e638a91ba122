"""Permutation groups given by generators.

A :class:`GeneratedGroup` lazily builds a stabilizer chain with a
deterministic incremental Schreier-Sims.  On top of it live membership,
order, pointwise and setwise stabilizers (the latter by backtracking over
the chain), block systems, restriction to invariant sets, and the
Alt/Sym and linked-orbit predicates the exact-weight solver consults.
"""

from __future__ import annotations

import enum
import logging
import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .perm import DomainMismatch, Permutation, compose

log = logging.getLogger(__name__)


class GroupError(ValueError):
    pass


# ---------------------------------------------------------------------------
# stabilizer chain


@dataclass
class _Level:
    base_point: int
    gens: list[Permutation] = field(default_factory=list)
    # transversal[p] maps base_point to p
    transversal: dict[int, Permutation] = field(default_factory=dict)


class StabilizerChain:
    """Base, strong generators and transversals for one group."""

    def __init__(self, n: int, generators: Sequence[Permutation], base_prefix: Sequence[int] = ()):
        self.n = n
        self.identity = Permutation.identity(n)
        self.levels: list[_Level] = []
        for b in base_prefix:
            if b not in (lv.base_point for lv in self.levels):
                self._new_level(b)
        self._schreier_sims([g for g in generators if not g.is_identity()])

    @property
    def base(self) -> list[int]:
        return [lv.base_point for lv in self.levels]

    def _new_level(self, point: int) -> _Level:
        lv = _Level(point)
        lv.transversal[point] = self.identity
        self.levels.append(lv)
        return lv

    def _extend_orbit(self, lv: _Level) -> None:
        queue = list(lv.transversal)
        while queue:
            nxt = []
            for p in queue:
                u = lv.transversal[p]
                for g in lv.gens:
                    q = g.images[p]
                    if q not in lv.transversal:
                        lv.transversal[q] = compose(u, g)
                        nxt.append(q)
            queue = nxt
        # new generators can reach old points' images too
        changed = True
        while changed:
            changed = False
            for p in list(lv.transversal):
                u = lv.transversal[p]
                for g in lv.gens:
                    q = g.images[p]
                    if q not in lv.transversal:
                        lv.transversal[q] = compose(u, g)
                        changed = True

    def sift(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """Strip ``g`` through levels ``start..``; return residue and drop-out level."""
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            beta = g.images[lv.base_point]
            u = lv.transversal.get(beta)
            if u is None:
                return g, i
            g = compose(g, u.inverse())
        return g, len(self.levels)

    def _choose_base_point(self, h: Permutation, level: int) -> int:
        # among points moved by h, prefer the one with the largest orbit
        gens = [h] + [g for lv in self.levels[level:] for g in lv.gens]
        orbit_of = _orbit_ids(self.n, gens)
        sizes: dict[int, int] = {}
        for p in range(self.n):
            sizes[orbit_of[p]] = sizes.get(orbit_of[p], 0) + 1
        moved = [p for p in range(self.n) if h.images[p] != p]
        return max(moved, key=lambda p: (sizes[orbit_of[p]], -p))

    def _add_strong(self, h: Permutation, upto: int) -> None:
        if upto == len(self.levels):
            self._new_level(self._choose_base_point(h, upto))
        for i in range(upto + 1):
            self.levels[i].gens.append(h)
        for i in range(upto + 1):
            self._extend_orbit(self.levels[i])

    def _schreier_sims(self, generators: list[Permutation]) -> None:
        for g in generators:
            h, j = self.sift(g)
            if not h.is_identity():
                self._add_strong(h, j)
        # processed Schreier generators, keyed by (level, point, gen index)
        done: set[tuple[int, int, int]] = set()
        progress = True
        while progress:
            progress = False
            for i in range(len(self.levels) - 1, -1, -1):
                lv = self.levels[i]
                for p in list(lv.transversal):
                    u = lv.transversal[p]
                    for gi, s in enumerate(lv.gens):
                        key = (i, p, gi)
                        if key in done:
                            continue
                        done.add(key)
                        q = s.images[p]
                        sch = compose(compose(u, s), lv.transversal[q].inverse())
                        h, j = self.sift(sch, i + 1)
                        if not h.is_identity():
                            self._add_strong(h, j)
                            progress = True
                            break
                    if progress:
                        break
                if progress:
                    break

    def order(self) -> int:
        return math.prod(len(lv.transversal) for lv in self.levels)

    def contains(self, g: Permutation) -> bool:
        h, _ = self.sift(g)
        return h.is_identity()

    def strong_generators(self) -> list[Permutation]:
        seen, out = set(), []
        for lv in self.levels:
            for g in lv.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def elements(self) -> Iterator[Permutation]:
        # g = u_{m-1} ... u_1 u_0 (left to right), built from the deepest level
        def rec(i: int, prefix: Permutation) -> Iterator[Permutation]:
            if i < 0:
                yield prefix
                return
            for u in self.levels[i].transversal.values():
                yield from rec(i - 1, compose(prefix, u))

        yield from rec(len(self.levels) - 1, self.identity)

    def dump(self) -> str:
        lines = [f"stabilizer chain on {self.n} points, order {self.order()}"]
        for i, lv in enumerate(self.levels):
            lines.append(
                f"  level {i}: base {lv.base_point}, orbit {sorted(lv.transversal)}, "
                f"{len(lv.gens)} gens"
            )
        return "\n".join(lines)


def _orbit_ids(n: int, gens: Iterable[Permutation]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for p, q in enumerate(g.images):
            a, b = find(p), find(q)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(p) for p in range(n)]


# ---------------------------------------------------------------------------
# groups and cosets


class GeneratedGroup:
    """``<generators>`` acting on ``0..n-1``."""

    def __init__(self, n: int, generators: Iterable[Permutation] = ()):
        self.n = n
        self.generators = [g for g in generators]
        for g in self.generators:
            if g.n != n:
                raise DomainMismatch(f"generator on {g.n} points, group on {n}")
        self._chain: StabilizerChain | None = None
        self._full: StabilizerChain | None = None
        self._lock = threading.RLock()

    @classmethod
    def symmetric(cls, n: int, points: Sequence[int] | None = None) -> "GeneratedGroup":
        pts = list(range(n)) if points is None else list(points)
        gens = []
        if len(pts) >= 2:
            gens.append(Permutation.from_cycles(n, [pts[:2]]))
            gens.append(Permutation.from_cycles(n, [pts]))
        return cls(n, gens)

    @classmethod
    def alternating(cls, n: int, points: Sequence[int] | None = None) -> "GeneratedGroup":
        pts = list(range(n)) if points is None else list(points)
        gens = [Permutation.from_cycles(n, [pts[i:i + 3]]) for i in range(len(pts) - 2)]
        return cls(n, gens)

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = StabilizerChain(self.n, self.generators)
        return self._chain

    def identity(self) -> Permutation:
        return Permutation.identity(self.n)

    def full_chain(self) -> StabilizerChain:
        """A chain whose base lists every point in increasing order."""
        if getattr(self, "_full", None) is None:
            with self._lock:
                self._full = StabilizerChain(self.n, self.chain.strong_generators(), base_prefix=range(self.n))
        return self._full

    def order(self) -> int:
        return self.chain.order()

    def contains(self, p: Permutation) -> bool:
        if p.n != self.n:
            raise DomainMismatch(f"permutation on {p.n} points, group on {self.n}")
        return self.chain.contains(p)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def elements(self) -> Iterator[Permutation]:
        return self.chain.elements()

    def orbits(self) -> list[frozenset[int]]:
        """Orbit partition, sorted by smallest point."""
        ids = _orbit_ids(self.n, self.generators)
        groups: dict[int, set[int]] = {}
        for p, r in enumerate(ids):
            groups.setdefault(r, set()).add(p)
        return sorted((frozenset(s) for s in groups.values()), key=min)

    def orbit(self, point: int) -> frozenset[int]:
        for o in self.orbits():
            if point in o:
                return o
        raise AssertionError("unreachable")

    def same_as(self, other: "GeneratedGroup") -> bool:
        return (
            self.order() == other.order()
            and all(other.contains(g) for g in self.generators)
        )

    def dump(self) -> str:
        return self.chain.dump()

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"GeneratedGroup(n={self.n}, <{gens}>)"


@dataclass(frozen=True)
class Coset:
    """Right coset ``group * representative``."""

    group: GeneratedGroup
    representative: Permutation

    def contains(self, p: Permutation) -> bool:
        return self.group.contains(compose(p, self.representative.inverse()))

    def elements(self) -> Iterator[Permutation]:
        for g in self.group.elements():
            yield compose(g, self.representative)


# ---------------------------------------------------------------------------
# stabilizers


def pointwise_stabilizer(g: GeneratedGroup, points: Iterable[int]) -> GeneratedGroup:
    pts = sorted(set(points))
    if not pts or g.is_trivial():
        return g
    chain = StabilizerChain(g.n, g.chain.strong_generators(), base_prefix=pts)
    depth = len(pts)
    gens = [s for s in chain.strong_generators() if all(s.images[p] == p for p in pts)]
    stab = GeneratedGroup(g.n, gens)
    # reuse the tail of the chain built with the prefix
    tail = StabilizerChain.__new__(StabilizerChain)
    tail.n, tail.identity = g.n, chain.identity
    tail.levels = chain.levels[depth:]
    stab._chain = tail
    return stab


def subgroup_search(
    g: GeneratedGroup,
    prop: Callable[[Permutation], bool],
    prune: Callable[[int, int], bool],
    base_prefix: Sequence[int] = (),
) -> GeneratedGroup:
    """Subgroup of ``g`` of elements satisfying ``prop``.

    ``prop`` must define a subgroup.  ``prune(point, image)`` returns False
    when no element of the subgroup can map ``point`` to ``image``; it is
    applied to base points as they get assigned.
    """
    chain = StabilizerChain(g.n, g.chain.strong_generators(), base_prefix=base_prefix)
    levels = chain.levels
    m = len(levels)
    found: list[tuple[int, Permutation]] = []

    def k_orbit(i: int) -> set[int]:
        gens = [h for lvl, h in found if lvl >= i]
        b = levels[i].base_point
        orb, queue = {b}, [b]
        while queue:
            p = queue.pop()
            for h in gens:
                q = h.images[p]
                if q not in orb:
                    orb.add(q)
                    queue.append(q)
        return orb

    def dfs(j: int, suffix: Permutation) -> Permutation | None:
        if j == m:
            return suffix if prop(suffix) else None
        b = levels[j].base_point
        for u in levels[j].transversal.values():
            s = compose(u, suffix)
            if not prune(b, s.images[b]):
                continue
            hit = dfs(j + 1, s)
            if hit is not None:
                return hit
        return None

    for i in range(m - 1, -1, -1):
        lv = levels[i]
        b = lv.base_point
        if not prune(b, b):
            continue
        orb = k_orbit(i)
        for p in sorted(lv.transversal):
            if p in orb or not prune(b, p):
                continue
            hit = dfs(i + 1, lv.transversal[p])
            if hit is not None:
                found.append((i, hit))
                orb = k_orbit(i)
    return GeneratedGroup(g.n, [h for _, h in found])


def setwise_stabilizer(g: GeneratedGroup, family: Iterable[Iterable[int]]) -> GeneratedGroup:
    """Elements mapping every set of ``family`` onto itself."""
    sets = [frozenset(s) for s in family]
    sets = [s for s in sets if 0 < len(s) < g.n]
    if not sets or g.is_trivial():
        return g
    # membership signature of each point across the family
    sig = [tuple(p in s for s in sets) for p in range(g.n)]

    def prune(p: int, q: int) -> bool:
        return sig[p] == sig[q]

    def prop(h: Permutation) -> bool:
        return all(sig[p] == sig[h.images[p]] for p in range(g.n))

    prefix = sorted(set().union(*sets))
    return subgroup_search(g, prop, prune, prefix)


def stabilizer_of_partition(g: GeneratedGroup, cells: Iterable[Iterable[int]]) -> GeneratedGroup:
    """Setwise stabilizer of every cell (the kernel of the action on the cells)."""
    return setwise_stabilizer(g, cells)


# ---------------------------------------------------------------------------
# restriction and actions


def restrict(g: GeneratedGroup, points: Sequence[int]) -> tuple[GeneratedGroup, list[int]]:
    """Action of ``g`` on an invariant set, relabelled to ``0..len(points)-1``."""
    pts = sorted(points)
    index = {p: i for i, p in enumerate(pts)}
    gens = []
    for h in g.generators:
        try:
            gens.append(Permutation([index[h.images[p]] for p in pts]))
        except KeyError:
            raise GroupError("point set is not invariant under the group") from None
    return GeneratedGroup(len(pts), gens), pts


@dataclass(frozen=True)
class BlockSystem:
    orbit: frozenset[int]
    blocks: tuple[frozenset[int], ...]

    def block_of(self, p: int) -> int:
        for i, b in enumerate(self.blocks):
            if p in b:
                return i
        raise KeyError(p)

    def is_trivial(self) -> bool:
        return len(self.blocks) in (1, len(self.orbit))


def _check_orbit(g: GeneratedGroup, orbit: Iterable[int]) -> frozenset[int]:
    orbit = frozenset(orbit)
    if orbit not in g.orbits():
        raise GroupError(f"{sorted(orbit)} is not an orbit of the group")
    return orbit


def minimal_block(g: GeneratedGroup, orbit: Iterable[int], a: int, b: int) -> frozenset[int]:
    """Smallest block of ``g`` on ``orbit`` containing ``a`` and ``b``."""
    pts = sorted(orbit)
    parent = {p: p for p in pts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y) -> bool:
        x, y = find(x), find(y)
        if x == y:
            return False
        parent[max(x, y)] = min(x, y)
        return True

    union(a, b)
    changed = True
    while changed:
        changed = False
        for h in g.generators:
            for p in pts:
                r = find(p)
                if r != p and union(h.images[p], h.images[r]):
                    changed = True
    ra = find(a)
    return frozenset(p for p in pts if find(p) == ra)


def _blocks_from(g: GeneratedGroup, orbit: frozenset[int], block: frozenset[int]) -> tuple[frozenset[int], ...]:
    blocks, covered = [], set()
    queue = [block]
    while queue:
        blk = queue.pop()
        if blk & covered:
            continue
        blocks.append(blk)
        covered |= blk
        for h in g.generators:
            img = frozenset(h.images[p] for p in blk)
            if not img & covered:
                queue.append(img)
    if covered != orbit:
        raise AssertionError("block images do not tile the orbit")
    return tuple(sorted(blocks, key=min))


def is_primitive(g: GeneratedGroup, orbit: Iterable[int]) -> bool:
    orbit = frozenset(orbit)
    if len(orbit) <= 2:
        return True
    a = min(orbit)
    return all(len(minimal_block(g, orbit, a, x)) == len(orbit) for x in sorted(orbit) if x != a)


def action_on_blocks(g: GeneratedGroup, bs: BlockSystem) -> tuple[GeneratedGroup, Callable[[Permutation], Permutation]]:
    """Image group on block indices and the action homomorphism."""
    where = {p: i for i, blk in enumerate(bs.blocks) for p in blk}

    def hom(h: Permutation) -> Permutation:
        imgs = []
        for blk in bs.blocks:
            targets = {where.get(h.images[p]) for p in blk}
            if len(targets) != 1 or None in targets:
                raise GroupError("element does not preserve the block system")
            imgs.append(targets.pop())
        return Permutation(imgs)

    return GeneratedGroup(len(bs.blocks), [hom(h) for h in g.generators]), hom


def maximal_block_system(g: GeneratedGroup, orbit: Iterable[int]) -> BlockSystem:
    """Block system on ``orbit`` on which ``g`` acts primitively.

    Starts from singletons and repeatedly merges along a minimal nontrivial
    block of the current block action.
    """
    orbit = _check_orbit(g, orbit)
    blocks: tuple[frozenset[int], ...] = tuple(sorted((frozenset([p]) for p in orbit), key=min))
    while True:
        bs = BlockSystem(orbit, blocks)
        act, _ = action_on_blocks(g, bs)
        m = len(blocks)
        if m <= 2:
            return bs
        best = None
        for x in range(1, m):
            blk = minimal_block(act, range(m), 0, x)
            if len(blk) < m and (best is None or len(blk) < len(best)):
                best = blk
        if best is None:
            return bs
        merged = frozenset(p for i in best for p in blocks[i])
        blocks = _blocks_from(g, orbit, merged)


# ---------------------------------------------------------------------------
# structural predicates


class AltStatus(enum.Enum):
    IS_SYM = "IsSym"
    IS_ALT = "IsAlt"
    NEITHER = "Neither"


def _is_transitive(g: GeneratedGroup) -> bool:
    return g.n <= 1 or len(g.orbits()) == 1


def contains_alternating(g: GeneratedGroup) -> AltStatus:
    """Decide whether a transitive group is Sym or Alt of its points by order."""
    if not _is_transitive(g):
        raise GroupError("group is not transitive")
    m = g.n
    order = g.order()
    full = math.factorial(m)
    if order == full:
        return AltStatus.IS_SYM
    if m >= 2 and order * 2 == full:
        return AltStatus.IS_ALT
    return AltStatus.NEITHER


def giant_threshold(k: int) -> int:
    """``(k-1)^(2k)`` with the value 1 for ``k <= 1``."""
    if k <= 1:
        return 1
    return (k - 1) ** (2 * k)


def primitive_giant_filter(g: GeneratedGroup, k: int) -> bool:
    """False when the primitive group provably has no nontrivial element of support <= k.

    That is the case once the degree exceeds ``giant_threshold(k)`` and the
    group does not contain the alternating group.
    """
    if not _is_transitive(g) or not is_primitive(g, range(g.n)):
        raise GroupError("group is not primitive")
    if g.n > giant_threshold(k) and contains_alternating(g) is AltStatus.NEITHER:
        return False
    return True


def orbits_linked(g: GeneratedGroup, orbit1: Iterable[int], orbit2: Iterable[int]) -> bool:
    o1, o2 = _check_orbit(g, orbit1), _check_orbit(g, orbit2)
    a = restrict(g, sorted(o1))[0].order()
    b = restrict(g, sorted(o2))[0].order()
    ab = restrict(g, sorted(o1 | o2))[0].order()
    return a == b == ab


def matching_fixed_point(g: GeneratedGroup, orbit1: Iterable[int], orbit2: Iterable[int], u: int) -> int:
    """A point ``v`` of ``orbit2`` whose stabilizer equals that of ``u``."""
    o1, o2 = _check_orbit(g, orbit1), _check_orbit(g, orbit2)
    if u not in o1:
        raise GroupError(f"{u} not in the first orbit")
    if len(o1) <= 9:
        log.info("matching_fixed_point on orbit of size %d <= 9: exhaustive stabilizer matching", len(o1))
    gu = pointwise_stabilizer(g, [u])
    for v in sorted(o2):
        gv = pointwise_stabilizer(g, [v])
        if gu.same_as(gv):
            return v
    raise GroupError("no point with equal stabilizer (orbits not linked or no giant action)")


# functional forms ----------------------------------------------------------


def orbit_partition(g: GeneratedGroup) -> list[frozenset[int]]:
    return g.orbits()


def group_order(g: GeneratedGroup) -> int:
    return g.order()


def contains(g: GeneratedGroup, p: Permutation) -> bool:
    return g.contains(p)


def closure(n: int, generators: Iterable[Permutation], limit: int = 100_000) -> set[Permutation]:
    """All elements by breadth-first multiplication; a reference for small groups."""
    gens = list(generators)
    ident = Permutation.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = compose(a, s)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
                    if len(seen) > limit:
                        raise GroupError(f"closure exceeds {limit} elements")
        frontier = nxt
    return seen
