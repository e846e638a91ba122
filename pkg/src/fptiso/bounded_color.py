"""Automorphisms of exact weight k satisfying a CNF formula, for hypergraphs
whose color classes have bounded size.

The automorphism is assembled from class-minimal pieces.  A perfect hash
family on the classes together with a coarsening ``h': [k] -> [l]`` splits
the classes into ``l`` parts; each part contributes one piece (possibly the
identity) of a prescribed weight, and every clause must be settled either by
a piece rooted in its own classes or by the identity outside all touched
classes.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Sequence

from . import splitters
from .cnf import CnfFormula, class_satisfies, satisfies
from .hypergraph import ColorClasses, ColoredHypergraph
from .oracle import ClassMinimalAuto, color_class_minimal_autos
from .parallel import first_success
from .perm import Permutation, compose_all

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundedColorInstance:
    x: ColoredHypergraph
    classes: ColorClasses
    k: int
    f: CnfFormula = field(default_factory=CnfFormula.true)
    bound: int | None = None

    def __post_init__(self):
        pts = sorted(v for c in self.classes for v in c)
        if pts != list(range(self.x.n)):
            raise ValueError("classes must partition the vertex set")
        if self.bound is not None and not self.classes.is_bounded(self.bound):
            raise ValueError(f"a class has more than {self.bound} vertices")
        if not 0 <= self.k <= self.x.n:
            raise ValueError(f"k={self.k} outside 0..{self.x.n}")
        self.f.check_range(self.x.n)

    @classmethod
    def from_colors(cls, x: ColoredHypergraph, k: int, f: CnfFormula | None = None, bound: int | None = None):
        return cls(x, x.color_classes(), k, f or CnfFormula.true(), bound)


@dataclass(frozen=True)
class Piece:
    sigma: Permutation
    touched: frozenset[int]
    clauses: int  # bitmask of clauses it settles on its own classes


@dataclass(frozen=True)
class Solution:
    sigma: Permutation
    pieces: tuple[Permutation, ...]
    weights: tuple[int, ...]
    parts: tuple[frozenset[int], ...]


def set_partitions(k: int) -> list[tuple[frozenset[int], ...]]:
    """All partitions of ``range(k)``, fewest blocks first."""
    out = []

    def rec(i: int, blocks: list[list[int]]):
        if i == k:
            out.append(tuple(frozenset(b) for b in blocks))
            return
        for b in blocks:
            b.append(i)
            rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        rec(i + 1, blocks)
        blocks.pop()

    rec(0, [])
    return sorted(out, key=len)


class _Context:
    """Everything that does not depend on the hash function."""

    def __init__(self, inst: BoundedColorInstance, autos: Sequence[ClassMinimalAuto]):
        self.inst = inst
        f = inst.f
        self.nclauses = len(f.clauses)
        idx = inst.classes.class_index()
        self.pieces_by_weight: dict[int, list[Piece]] = {}
        for a in autos:
            mask = 0
            for j, cl in enumerate(f.clauses):
                if class_satisfies(a.sigma, CnfFormula((cl,)), [inst.classes.classes[i] for i in a.touched]):
                    mask |= 1 << j
            self.pieces_by_weight.setdefault(a.sigma.weight(), []).append(Piece(a.sigma, a.touched, mask))
        # classes through which the identity settles each clause
        self.id_roots = [frozenset(idx[l.u] for l in cl if (l.u == l.v) != l.negated) for cl in f.clauses]
        self.memo: set[tuple] = set()

    def settles(self, chosen: Sequence[Piece]) -> bool:
        covered = 0
        touched: frozenset[int] = frozenset()
        for p in chosen:
            covered |= p.clauses
            touched |= p.touched
        for j in range(self.nclauses):
            if covered >> j & 1:
                continue
            if not self.id_roots[j] - touched:
                return False
        return True

    def check_parts(self, parts: tuple[frozenset[int], ...]) -> Solution | None:
        k = self.inst.k
        per_part = []
        for part in parts:
            by_w: dict[int, list[Piece]] = {0: [Piece(Permutation.identity(self.inst.x.n), frozenset(), 0)]}
            for w, ps in self.pieces_by_weight.items():
                fit = [p for p in ps if p.touched <= part]
                if fit:
                    by_w[w] = fit
            per_part.append(by_w)
        ell = len(parts)
        for comp in itertools.product(range(k + 1), repeat=ell):
            if sum(comp) != k or any(w not in per_part[i] for i, w in enumerate(comp)):
                continue
            for chosen in itertools.product(*(per_part[i][w] for i, w in enumerate(comp))):
                if self.settles(chosen):
                    sigma = compose_all((p.sigma for p in chosen), self.inst.x.n)
                    return Solution(sigma, tuple(p.sigma for p in chosen), comp, parts)
        return None

    def run_hash(self, h: Sequence[int]) -> Solution | None:
        k = self.inst.k
        m = len(self.inst.classes)
        # a coarsening [k] -> [l] only matters through the partition of [k] it induces
        for blocks in set_partitions(k):
            parts = tuple(frozenset(c for c in range(m) if h[c] in b) for b in blocks)
            key = tuple(sorted(tuple(sorted(p)) for p in parts))
            if key in self.memo:
                continue
            self.memo.add(key)
            sol = self.check_parts(parts)
            if sol is not None:
                return sol
        return None


def _run_hash_task(task):
    ctx, h = task
    return ctx.run_hash(h)


def solve(inst: BoundedColorInstance, threads: int = 1, autos: Sequence[ClassMinimalAuto] | None = None) -> Solution | None:
    n, k = inst.x.n, inst.k
    if k == 0:
        ident = Permutation.identity(n)
        return Solution(ident, (), (), ()) if satisfies(ident, inst.f) else None
    if autos is None:
        autos = color_class_minimal_autos(inst.x, inst.classes, k)
    ctx = _Context(inst, autos)
    if not ctx.pieces_by_weight:
        return None
    m = len(inst.classes)
    family = splitters.build(m, min(k, m))
    if threads <= 1:
        for h in family:
            sol = ctx.run_hash(h)
            if sol is not None:
                return sol
        return None
    return first_success(_run_hash_task, [(ctx, h) for h in family], threads)


def color_exact_cnf_ga(inst: BoundedColorInstance, threads: int = 1) -> Permutation | None:
    sol = solve(inst, threads)
    return None if sol is None else sol.sigma
