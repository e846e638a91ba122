"""Reference subroutines and brute-force ground truth.

The isomorphism search is individualization/refinement backtracking: refine
both sides jointly, individualize the smallest vertex of the smallest
non-singleton cell against every candidate on the other side, recurse.
Automorphism generators come from a bottom-up sweep over the first path
with orbit pruning, which yields a generating set of the full group.

Every ``brute_*`` routine ignores all of that and enumerates.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .cnf import CnfFormula, satisfies
from .groups import Coset, GeneratedGroup
from .hypergraph import ColorClasses, ColoredHypergraph, image_mask, is_automorphism, is_isomorphism
from .perm import Permutation, compose
from .refine import refine_jointly

log = logging.getLogger(__name__)

BRUTE_LIMIT = 9
COMPLEXITY_WEIGHT_CAP = 12


class OracleLimit(ValueError):
    """Input too large for an exhaustive routine."""


# ---------------------------------------------------------------------------
# individualization / refinement


def _individualize(col: Sequence[int], v: int) -> list[int]:
    out = list(col)
    out[v] = max(col) + 1
    return out


def _target_cell(col: Sequence[int]) -> list[int] | None:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(col):
        cells.setdefault(c, []).append(v)
    big = [(len(vs), c) for c, vs in cells.items() if len(vs) > 1]
    if not big:
        return None
    return cells[min(big)[1]]


class _Search:
    def __init__(self, x: ColoredHypergraph, y: ColoredHypergraph):
        self.x, self.y = x, y
        self.nodes = 0

    def refine(self, cx, cy):
        cx, cy = refine_jointly([self.x, self.y], [cx, cy])
        if sorted(cx) != sorted(cy):
            return None
        return cx, cy

    def leaf(self, cx, cy) -> Permutation | None:
        where = {c: w for w, c in enumerate(cy)}
        p = Permutation([where[c] for c in cx], check=False)
        return p if is_isomorphism(p, self.x, self.y) else None

    def first(self, cx, cy) -> Permutation | None:
        """Some isomorphism consistent with the refined pair, or None."""
        self.nodes += 1
        cell = _target_cell(cx)
        if cell is None:
            return self.leaf(cx, cy)
        v = cell[0]
        for w in (w for w, c in enumerate(cy) if c == cx[v]):
            nxt = self.refine(_individualize(cx, v), _individualize(cy, w))
            if nxt is None:
                continue
            hit = self.first(*nxt)
            if hit is not None:
                return hit
        return None


def _orbit_of(point: int, gens: Sequence[Permutation]) -> set[int]:
    orb, queue = {point}, [point]
    while queue:
        p = queue.pop()
        for g in gens:
            q = g.images[p]
            if q not in orb:
                orb.add(q)
                queue.append(q)
    return orb


def automorphism_generators(x: ColoredHypergraph) -> list[Permutation]:
    s = _Search(x, x)
    start = s.refine(list(x.colors), list(x.colors))
    assert start is not None
    # descend the first path, remembering each node's coloring and chosen vertex
    path: list[tuple[list[int], int]] = []
    col = start[0]
    while True:
        cell = _target_cell(col)
        if cell is None:
            break
        v = cell[0]
        path.append((col, v))
        col = s.refine(_individualize(col, v), _individualize(col, v))[0]
    gens: list[Permutation] = []
    for col, v in reversed(path):
        orbit = _orbit_of(v, gens)
        for w in [w for w, c in enumerate(col) if c == col[v]]:
            if w in orbit:
                continue
            nxt = s.refine(_individualize(col, v), _individualize(col, w))
            if nxt is None:
                continue
            g = s.first(*nxt)
            if g is not None:
                gens.append(g)
                orbit = _orbit_of(v, gens)
    return gens


def find_isomorphism(x: ColoredHypergraph, y: ColoredHypergraph) -> Permutation | None:
    if x.n != y.n or len(x.edge_masks) != len(y.edge_masks) or len(x.directed) != len(y.directed):
        return None
    s = _Search(x, y)
    start = s.refine(list(x.colors), list(y.colors))
    if start is None:
        return None
    return s.first(*start)


def iso_coset(x: ColoredHypergraph, y: ColoredHypergraph) -> tuple[Permutation, list[Permutation]] | None:
    """Some isomorphism x -> y and generators of Aut(x), or None."""
    rep = find_isomorphism(x, y)
    if rep is None:
        return None
    return rep, automorphism_generators(x)


def automorphism_group(x: ColoredHypergraph) -> GeneratedGroup:
    return GeneratedGroup(x.n, automorphism_generators(x))


def iso_coset_of(x: ColoredHypergraph, y: ColoredHypergraph) -> Coset | None:
    found = iso_coset(x, y)
    if found is None:
        return None
    rep, gens = found
    return Coset(GeneratedGroup(x.n, gens), rep)


# ---------------------------------------------------------------------------
# small support and minimal complexity


def small_support_elements(c: Coset, k: int) -> list[Permutation]:
    """All elements of the coset moving at most ``k`` points.

    Walks a stabilizer chain whose base is every point in order; the image
    of the j-th point is settled at depth j, so branches that already move
    more than ``k`` points are cut.
    """
    n = c.group.n
    chain = c.group.full_chain()
    rep = c.representative
    ri = rep.images
    levels = chain.levels
    out: list[Permutation] = []

    def dfs(j: int, s: Permutation, moved: int) -> None:
        if j == len(levels):
            out.append(compose(s, rep))
            return
        b = levels[j].base_point
        for u in levels[j].transversal.values():
            s2 = compose(u, s)
            m2 = moved + (ri[s2.images[b]] != b)
            if m2 <= k:
                dfs(j + 1, s2, m2)

    if n == 0:
        return [rep]
    dfs(0, Permutation.identity(n), 0)
    return sorted(set(out), key=lambda p: (p.weight(), p.images))


def _cycles_of(images: tuple[int, ...]) -> list[list[int]]:
    seen = [False] * len(images)
    out = []
    for s in range(len(images)):
        if seen[s] or images[s] == s:
            continue
        cyc, v = [], s
        while not seen[v]:
            seen[v] = True
            cyc.append(v)
            v = images[v]
        out.append(cyc)
    return out


def iter_proper_suffixes(sigma: Permutation) -> Iterator[Permutation]:
    """Every tau_i...tau_t (2 <= i <= t) over all minimum factorizations tau_1...tau_t.

    Stripping a first factor (a b) from a minimum factorization leaves
    (a b)*sigma, which is one step shorter exactly when a and b share a cycle.
    Yields each suffix once, longest first.
    """
    if sigma.weight() > COMPLEXITY_WEIGHT_CAP:
        raise OracleLimit(f"factorization enumeration capped at weight {COMPLEXITY_WEIGHT_CAP}")
    seen: set[tuple[int, ...]] = set()
    frontier = [tuple(sigma.images)]
    while frontier:
        nxt = []
        for p in frontier:
            cycles = _cycles_of(p)
            if sum(len(c) - 1 for c in cycles) <= 1:
                continue
            for cyc in cycles:
                for a, b in itertools.combinations(cyc, 2):
                    q = list(p)
                    q[a], q[b] = p[b], p[a]
                    q = tuple(q)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
                        yield Permutation(q, check=False)
        frontier = nxt


def proper_suffixes(sigma: Permutation) -> set[Permutation]:
    return set(iter_proper_suffixes(sigma))


def has_minimal_complexity(sigma: Permutation, c: Coset) -> bool:
    if sigma.is_identity():
        return False
    return not any(c.contains(r) for r in iter_proper_suffixes(sigma))


def minimal_complexity_elements(c: Coset, k: int) -> list[Permutation]:
    if k > COMPLEXITY_WEIGHT_CAP:
        raise OracleLimit(f"support bound {k} exceeds the cap {COMPLEXITY_WEIGHT_CAP}")
    return [s for s in small_support_elements(c, k) if has_minimal_complexity(s, c)]


# ---------------------------------------------------------------------------
# color-class-minimal automorphisms


@dataclass(frozen=True)
class ClassMinimalAuto:
    sigma: Permutation
    touched: frozenset[int]


def touched_classes(sigma: Permutation, classes: ColorClasses) -> frozenset[int]:
    idx = classes.class_index()
    return frozenset(idx[v] for v in sigma.support())


def restrict_to_classes(sigma: Permutation, classes: ColorClasses, chosen: Iterable[int]) -> Permutation:
    pts = set().union(*(classes.classes[i] for i in chosen)) if chosen else set()
    return Permutation([sigma.images[v] if v in pts else v for v in range(sigma.n)], check=False)


def is_class_minimal(sigma: Permutation, x: ColoredHypergraph, classes: ColorClasses) -> bool:
    touched = sorted(touched_classes(sigma, classes))
    if not touched:
        return False
    for r in range(1, len(touched)):
        for sub in itertools.combinations(touched, r):
            if is_automorphism(restrict_to_classes(sigma, classes, sub), x):
                return False
    return True


def class_colored(x: ColoredHypergraph, classes: ColorClasses) -> ColoredHypergraph:
    """x with colors refined by class membership."""
    idx = classes.class_index()
    pairs = sorted({(x.colors[v], idx[v]) for v in range(x.n)})
    code = {p: i for i, p in enumerate(pairs)}
    return x.with_colors([code[(x.colors[v], idx[v])] for v in range(x.n)])


def color_class_minimal_autos(x: ColoredHypergraph, classes: ColorClasses, k: int) -> list[ClassMinimalAuto]:
    """All class-preserving, class-minimal automorphisms of weight 1..k."""
    xc = class_colored(x, classes)
    group = automorphism_group(xc)
    out = []
    for s in small_support_elements(Coset(group, Permutation.identity(x.n)), k):
        if s.is_identity():
            continue
        if is_class_minimal(s, x, classes):
            out.append(ClassMinimalAuto(s, touched_classes(s, classes)))
    return out


# ---------------------------------------------------------------------------
# brute force


def _guard(n: int, limit: int | None) -> None:
    limit = BRUTE_LIMIT if limit is None else limit
    if n > limit:
        raise OracleLimit(f"n={n} exceeds the brute-force limit {limit}")


def brute_isomorphisms(x: ColoredHypergraph, y: ColoredHypergraph, limit: int | None = None) -> Iterator[Permutation]:
    """Every isomorphism x -> y, in lexicographic order of image lists."""
    _guard(x.n, limit)
    n = x.n
    if n != y.n:
        return
    # hyperedges checked as soon as their last vertex gets an image
    closing: list[list[int]] = [[] for _ in range(n)]
    for m in x.edge_masks:
        closing[m.bit_length() - 1].append(m)
    arcs: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for u, v, c in x.directed:
        arcs[max(u, v)].append((u, v, c))
    img = [0] * n
    used = [False] * n

    def rec(u: int) -> Iterator[Permutation]:
        if u == n:
            p = Permutation(img, check=False)
            if is_isomorphism(p, x, y):
                yield p
            return
        for w in range(n):
            if used[w] or y.colors[w] != x.colors[u]:
                continue
            img[u] = w
            if all(image_mask(m, img) in y.edge_masks for m in closing[u]) and all(
                (img[a], img[b], c) in y.directed for a, b, c in arcs[u]
            ):
                used[w] = True
                yield from rec(u + 1)
                used[w] = False

    yield from rec(0)


def brute_automorphisms(x: ColoredHypergraph, limit: int | None = None) -> list[Permutation]:
    return list(brute_isomorphisms(x, x, limit))


def derangements(points: Sequence[int]) -> Iterator[dict[int, int]]:
    for images in itertools.permutations(points):
        if all(a != b for a, b in zip(points, images)):
            yield dict(zip(points, images))


def weight_exactly(n: int, k: int) -> Iterator[Permutation]:
    """Every permutation of 0..n-1 that moves exactly k points."""
    for sup in itertools.combinations(range(n), k):
        for d in derangements(sup):
            yield Permutation([d.get(v, v) for v in range(n)], check=False)


def brute_exact_cnf_iso(
    x: ColoredHypergraph, y: ColoredHypergraph, k: int, f: CnfFormula, limit: int | None = None
) -> Permutation | None:
    _guard(x.n, limit)
    if x.n != y.n or not 0 <= k <= x.n:
        return None
    for p in weight_exactly(x.n, k):
        if is_isomorphism(p, x, y) and satisfies(p, f):
            return p
    return None


def brute_cnf_iso(x: ColoredHypergraph, y: ColoredHypergraph, f: CnfFormula, limit: int | None = None) -> Permutation | None:
    for p in brute_isomorphisms(x, y, limit):
        if satisfies(p, f):
            return p
    return None


def brute_exact_complexity_iso(
    x: ColoredHypergraph, y: ColoredHypergraph, t: int, limit: int | None = None
) -> Permutation | None:
    for p in brute_isomorphisms(x, y, limit):
        if p.complexity() == t:
            return p
    return None


def brute_colga(
    x: ColoredHypergraph, red: Iterable[int], blue: Iterable[int], k: int, limit: int | None = None
) -> Permutation | None:
    """Color-preserving automorphism moving exactly k blue vertices (red colors from ``x``)."""
    del red  # red classes are already part of x's coloring
    blue = sorted(set(blue))
    for p in brute_isomorphisms(x, x, limit):
        if sum(1 for v in blue if p.images[v] != v) == k:
            return p
    return None


def brute_color_exact_cnf_ga(
    x: ColoredHypergraph, classes: ColorClasses, k: int, f: CnfFormula, limit: int | None = None
) -> Permutation | None:
    """Class-preserving automorphism of weight exactly k satisfying f."""
    _guard(x.n, limit)
    idx = classes.class_index()
    for p in weight_exactly(x.n, k):
        if all(idx[p.images[v]] == idx[v] for v in range(x.n)) and is_automorphism(p, x) and satisfies(p, f):
            return p
    return None


def count_isomorphisms_brute(x: ColoredHypergraph, y: ColoredHypergraph, fixes: Sequence[tuple[int, int]] = ()) -> int:
    return sum(1 for p in brute_isomorphisms(x, y) if all(p.images[u] == v for u, v in fixes))


def factorization_suffixes_brute(sigma: Permutation) -> set[Permutation]:
    """Proper suffixes of minimum factorizations found by trying every transposition word."""
    n = sigma.n
    t = sigma.complexity()
    trans = []
    for a, b in itertools.combinations(range(n), 2):
        im = list(range(n))
        im[a], im[b] = b, a
        trans.append(Permutation(im))
    out = set()
    for word in itertools.product(trans, repeat=t):
        prod = Permutation.identity(n)
        for w in word:
            prod = compose(prod, w)
        if prod == sigma:
            for i in range(1, t):
                suf = Permutation.identity(n)
                for w in word[i:]:
                    suf = compose(suf, w)
                out.add(suf)
    return out


def peel_minimal_factors(sigma: Permutation, c: Coset) -> list[Permutation]:
    """Split sigma in c into factors of minimal complexity, last one in c, others in c's group.

    Repeatedly replaces sigma by a proper suffix that stays in the coset;
    the stripped prefix lies in the group.
    """
    group_coset = Coset(c.group, Permutation.identity(sigma.n))
    factors: list[Permutation] = []
    current = sigma
    while True:
        shorter = sorted((r for r in proper_suffixes(current) if c.contains(r)), key=lambda r: (r.complexity(), r.images))
        if not shorter:
            break
        r = shorter[-1]
        prefix = compose(current, r.inverse())
        factors.extend(peel_minimal_factors(prefix, group_coset))
        current = r
    factors.append(current)
    return factors
