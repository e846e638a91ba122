"""Isomorphisms of unrestricted weight satisfying a CNF formula.

For every partial permutation assignment to the formula's variables that
satisfies the formula, pairs set to 1 are forced by matching fresh colors
on both sides.  Pairs set to 0 (on rows without a forced image) are
forbidden; an isomorphism avoiding all of them exists iff the number of
isomorphisms exceeds the size of the union of the sets hitting at least one
forbidden pair, which inclusion-exclusion gives from counts with extra pairs
forced.  A solution is then extracted one vertex at a time with the same
test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .cnf import CnfFormula, PartialAssignment, enumerate_partial_assignments, satisfies
from .hypergraph import ColoredHypergraph
from .oracle import automorphism_group, find_isomorphism
from .perm import Permutation


@dataclass(frozen=True)
class ForbiddenPairSet:
    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)


def _tagged(x: ColoredHypergraph, y: ColoredHypergraph, fixes: Sequence[tuple[int, int]]):
    """Copies of x and y where fix j adds tag j to u_j in x and to v_j in y."""
    xt: list[list[int]] = [[] for _ in range(x.n)]
    yt: list[list[int]] = [[] for _ in range(y.n)]
    for j, (u, v) in enumerate(fixes):
        xt[u].append(j)
        yt[v].append(j)
    xc = [(x.colors[u], tuple(xt[u])) for u in range(x.n)]
    yc = [(y.colors[v], tuple(yt[v])) for v in range(y.n)]
    code = {c: i for i, c in enumerate(sorted(set(xc) | set(yc)))}
    return x.with_colors([code[c] for c in xc]), y.with_colors([code[c] for c in yc])


def count_iso_fixing(x: ColoredHypergraph, y: ColoredHypergraph, fixes: Sequence[tuple[int, int]] = ()) -> int:
    """Number of isomorphisms x -> y mapping every ``u`` to its ``v`` in ``fixes``."""
    if x.n != y.n:
        return 0
    xs, ys = _tagged(x, y, fixes)
    if find_isomorphism(xs, ys) is None:
        return 0
    return automorphism_group(xs).order()


def union_by_inclusion_exclusion(counts: dict[frozenset[int], int], k: int) -> int:
    """``sum over nonempty S of (-1)^(|S|+1) * n_S``."""
    total = 0
    for r in range(1, k + 1):
        sign = 1 if r % 2 else -1
        for s in itertools.combinations(range(k), r):
            total += sign * counts[frozenset(s)]
    return total


def subset_counts(
    x: ColoredHypergraph, y: ColoredHypergraph, base: Sequence[tuple[int, int]], forbidden: ForbiddenPairSet
) -> dict[frozenset[int], int]:
    k = len(forbidden)
    out = {}
    for r in range(k + 1):
        for s in itertools.combinations(range(k), r):
            extra = [forbidden.pairs[i] for i in s]
            out[frozenset(s)] = count_iso_fixing(x, y, list(base) + extra)
    return out


def avoiding_count(x, y, base, forbidden: ForbiddenPairSet) -> int:
    """Isomorphisms respecting ``base`` that hit no forbidden pair."""
    counts = subset_counts(x, y, base, forbidden)
    return counts[frozenset()] - union_by_inclusion_exclusion(counts, len(forbidden))


def forbidden_pairs(alpha: PartialAssignment) -> ForbiddenPairSet:
    return ForbiddenPairSet(tuple(alpha.forbidden()))


def _extend(x, y, fixed: list[tuple[int, int]], forbidden: ForbiddenPairSet) -> Permutation:
    """Individualize vertex by vertex while some solution stays compatible."""
    n = x.n
    while True:
        xs, ys = _tagged(x, y, fixed)
        by: dict[int, list[int]] = {}
        for u, c in enumerate(xs.colors):
            by.setdefault(c, []).append(u)
        open_cells = sorted((len(vs), vs[0], c) for c, vs in by.items() if len(vs) > 1)
        if not open_cells:
            break
        _, u, c = open_cells[0]
        for v in (v for v in range(n) if ys.colors[v] == c):
            if avoiding_count(x, y, fixed + [(u, v)], forbidden) > 0:
                fixed = fixed + [(u, v)]
                break
        else:
            raise AssertionError("no compatible image although a solution was counted")
    xs, ys = _tagged(x, y, fixed)
    sigma = find_isomorphism(xs, ys)
    assert sigma is not None
    return sigma


def cnf_hgi(x: ColoredHypergraph, y: ColoredHypergraph, f: CnfFormula | None = None) -> Permutation | None:
    """An isomorphism x -> y satisfying ``f``, or None."""
    f = f or CnfFormula.true()
    f.check_range(x.n)
    if x.n != y.n:
        return None
    for alpha in enumerate_partial_assignments(f, x.n):
        if not alpha.satisfies(f):
            continue
        forced = sorted(alpha.forced().items())
        forbidden = forbidden_pairs(alpha)
        if avoiding_count(x, y, forced, forbidden) <= 0:
            continue
        sigma = _extend(x, y, list(forced), forbidden)
        assert satisfies(sigma, f)
        return sigma
    return None
