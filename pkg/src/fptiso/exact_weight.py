"""Automorphisms and isomorphisms of exact weight k satisfying a CNF formula.

The automorphism search first builds the group generated by the
minimal-complexity automorphisms of support at most k, which contains every
solution.  It then shrinks that group until every orbit is small:

* an orbit whose maximal blocks have more than k/2 points, or whose block
  action is a large primitive group without the alternating group, loses
  the freedom to move its blocks (no weight-k solution moves them);
* otherwise a huge orbit gets one of its blocks, chosen from the part
  left free after fixing the formula's vertices, stabilized setwise.

The remaining orbits are bounded in size and become the color classes of
the bounded-color search.  Isomorphisms reduce to automorphisms through a
low-weight isomorphism ``pi`` and a guess of how the solution overlaps
``support(pi)``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

from .bounded_color import BoundedColorInstance
from .bounded_color import solve as bounded_solve
from .cnf import CnfFormula, Lit, satisfies, translate
from .groups import (
    AltStatus,
    Coset,
    GeneratedGroup,
    action_on_blocks,
    contains_alternating,
    giant_threshold,
    maximal_block_system,
    pointwise_stabilizer,
    setwise_stabilizer,
)
from .hypergraph import ColorClasses, ColoredHypergraph, max_hyperedge_size
from .oracle import (
    COMPLEXITY_WEIGHT_CAP,
    automorphism_group,
    iso_coset_of,
    minimal_complexity_elements,
    small_support_elements,
)
from .parallel import first_success
from .perm import Permutation, compose

log = logging.getLogger(__name__)


def orbit_limit(k: int, t: int) -> int:
    """``max((k-1)^(2k), t + k, 9)``."""
    return max(giant_threshold(k), t + k, 9)


def half_ceil(k: int, m: int) -> int:
    """``k*m/2`` rounded up."""
    return -(-k * m // 2)


@dataclass
class ShrinkState:
    group: GeneratedGroup
    terms: frozenset[int]
    backend: str
    history: list[tuple[str, GeneratedGroup]] = field(default_factory=list)

    def orbits(self) -> list[frozenset[int]]:
        return self.group.orbits()


def initial_group(x: ColoredHypergraph, k: int) -> tuple[GeneratedGroup, str]:
    aut = Coset(automorphism_group(x), Permutation.identity(x.n))
    if k <= COMPLEXITY_WEIGHT_CAP:
        return GeneratedGroup(x.n, minimal_complexity_elements(aut, k)), "minimal-complexity"
    # beyond the factorization cap: all automorphisms of support <= k still contain every solution
    log.info("k=%d above the factorization cap; generating from all small-support automorphisms", k)
    return GeneratedGroup(x.n, [s for s in small_support_elements(aut, k) if not s.is_identity()]), "small-support"


def shrink(x: ColoredHypergraph, k: int, f: CnfFormula) -> ShrinkState:
    terms = frozenset(f.vertices())
    g, backend = initial_group(x, k)
    state = ShrinkState(g, terms, backend, [("start", g)])
    limit = orbit_limit(k, len(terms))
    gthr = giant_threshold(k)

    def big_orbit() -> bool:
        return any(2 * len(o) > k * limit for o in state.group.orbits())

    while big_orbit():
        changed = True
        systems: dict[frozenset[int], tuple] = {}
        while changed:
            changed = False
            systems = {}
            for omega in state.group.orbits():
                if len(omega) < 2:
                    continue
                bs = maximal_block_system(state.group, omega)
                systems[omega] = bs.blocks
                wide = 2 * len(bs.blocks[0]) > k
                giantless = False
                if len(bs.blocks) > gthr:
                    act, _ = action_on_blocks(state.group, bs)
                    giantless = contains_alternating(act) is AltStatus.NEITHER
                if wide or giantless:
                    smaller = setwise_stabilizer(state.group, bs.blocks)
                    if smaller.order() < state.group.order():
                        state.group = smaller
                        state.history.append(("wide-blocks" if wide else "no-giant", smaller))
                        changed = True
                        break
        if not systems:
            break
        omega_max = max(systems, key=lambda o: (len(systems[o]), -min(o)))
        blocks = systems[omega_max]
        if len(blocks) <= limit:
            log.info("large orbit but only %d blocks; stopping the shrink loop", len(blocks))
            break
        h = pointwise_stabilizer(state.group, terms)
        inside = [o for o in h.orbits() if o <= omega_max]
        omega_h = max(inside, key=lambda o: (len(o), -min(o)))
        b_h = [d for d in blocks if d <= omega_h]
        if len(b_h) <= k:
            log.warning("only %d free blocks (need > %d); skipping the block stabilization", len(b_h), k)
            break
        delta = min(b_h, key=min)
        smaller = setwise_stabilizer(state.group, [delta])
        if smaller.order() == state.group.order():
            log.warning("block stabilization made no progress; stopping")
            break
        state.group = smaller
        state.history.append(("free-block", smaller))
    return state


def exact_cnf_hga(
    x: ColoredHypergraph, k: int, f: CnfFormula | None = None, d: int | None = None, threads: int = 1
) -> Permutation | None:
    """An automorphism of weight exactly ``k`` satisfying ``f``, or None."""
    f = f or CnfFormula.true()
    f.check_range(x.n)
    if d is not None and max_hyperedge_size(x) > d:
        raise ValueError(f"hyperedges larger than d={d}")
    if k < 0 or k > x.n:
        return None
    if k == 0:
        ident = Permutation.identity(x.n)
        return ident if satisfies(ident, f) else None
    state = shrink(x, k, f)
    bound = half_ceil(k, orbit_limit(k, len(state.terms)))
    classes = ColorClasses(tuple(state.group.orbits()))
    sol = bounded_solve(BoundedColorInstance(x, classes, k, f, bound), threads)
    return None if sol is None else sol.sigma


def forced_formula(f: CnfFormula, pi: Permutation, fix_back, move, keep) -> CnfFormula:
    """``pi^-1(F)`` plus the literals that pin how ``phi`` treats ``support(pi)``."""
    inv = pi.inverse()
    extra = []
    for u in fix_back:
        extra.append((Lit(u, inv.images[u]),))
    for u in move:
        extra.append((Lit(u, inv.images[u], True),))
        extra.append((Lit(u, u, True),))
    for u in keep:
        extra.append((Lit(u, u),))
    return translate(f, inv) & CnfFormula(tuple(extra))


@dataclass(frozen=True)
class _Guess:
    x: ColoredHypergraph
    k: int
    f: CnfFormula


def _run_guess(g: _Guess) -> Permutation | None:
    return exact_cnf_hga(g.x, g.k, g.f)


def guesses(x1: ColoredHypergraph, k: int, f: CnfFormula, pi: Permutation) -> list[_Guess]:
    sup = sorted(pi.support())
    out = []
    for r in range(len(sup) + 1):
        for fix_back in itertools.combinations(sup, r):
            rest = [u for u in sup if u not in fix_back]
            for s in range(len(rest) + 1):
                for move in itertools.combinations(rest, s):
                    keep = [u for u in rest if u not in move]
                    kk = k - len(keep) + len(fix_back)
                    if kk < 0 or kk > x1.n:
                        continue
                    out.append(_Guess(x1, kk, forced_formula(f, pi, fix_back, move, keep)))
    return out


def exact_cnf_hgi(
    x1: ColoredHypergraph,
    x2: ColoredHypergraph,
    k: int,
    f: CnfFormula | None = None,
    d: int | None = None,
    threads: int = 1,
) -> Permutation | None:
    """An isomorphism ``x1 -> x2`` of weight exactly ``k`` satisfying ``f``, or None."""
    f = f or CnfFormula.true()
    f.check_range(x1.n)
    if d is not None and max(max_hyperedge_size(x1), max_hyperedge_size(x2)) > d:
        raise ValueError(f"hyperedges larger than d={d}")
    if x1.n != x2.n or k < 0 or k > x1.n:
        return None
    coset = iso_coset_of(x1, x2)
    if coset is None:
        return None
    low = small_support_elements(coset, k)
    if not low:
        return None
    pi = low[0]
    phi = first_success(_run_guess, guesses(x1, k, f, pi), threads)
    if phi is None:
        return None
    return compose(phi, pi)
