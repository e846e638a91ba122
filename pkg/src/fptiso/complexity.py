"""Isomorphisms of exact Cayley complexity via cycle patterns.

A factorization ``sigma = sigma_1 ... sigma_l`` is complexity-additive when
the factor complexities add up.  Its cycle graph joins each moved point to
the cycles containing it; for additive factorizations it is a forest.  A
cycle pattern is such a forest with unlabeled primal vertices and colored
cycle vertices (color i = factor i).  The search picks a pattern, a hash of
the points into as many values as the pattern has primal vertices, and
factors whose hashed cycles glue together into a copy of the pattern.
"""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import networkx as nx

from . import splitters
from .groups import Coset, GeneratedGroup
from .hypergraph import ColoredHypergraph, is_isomorphism, max_hyperedge_size
from .oracle import automorphism_group, iso_coset_of, minimal_complexity_elements
from .perm import Permutation, compose_all

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# cycle graphs


@dataclass(frozen=True)
class CycleGraph:
    primal: tuple[int, ...]
    primal_colors: tuple[int, ...]
    cycles: tuple[tuple[int, tuple[int, ...]], ...]  # (factor index from 1, points)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (primal point, cycle index)."""
        return [(p, j) for j, (_, pts) in enumerate(self.cycles) for p in pts]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        for p, c in zip(self.primal, self.primal_colors):
            g.add_node(("p", p), color=c)
        for j, (i, _) in enumerate(self.cycles):
            g.add_node(("c", j), color=i)
        g.add_edges_from((("p", p), ("c", j)) for p, j in self.edges())
        return g

    def is_forest(self) -> bool:
        return nx.is_forest(self.to_networkx()) if self.primal else True


def cycle_graph(factors: Sequence[Permutation], coloring: Sequence[int] | None = None) -> CycleGraph:
    pts = sorted(set().union(*(f.support() for f in factors))) if factors else []
    colors = tuple(coloring[p] if coloring is not None else p for p in pts)
    cycles = tuple((i + 1, cyc) for i, f in enumerate(factors) for cyc in f.cycles())
    return CycleGraph(tuple(pts), colors, cycles)


def is_complexity_additive(factors: Sequence[Permutation]) -> bool:
    if any(f.is_identity() for f in factors):
        raise ValueError("identity factor")
    if not factors:
        return True
    prod = compose_all(factors, factors[0].n)
    return prod.complexity() == sum(f.complexity() for f in factors)


# ---------------------------------------------------------------------------
# patterns


@dataclass(frozen=True)
class CyclePattern:
    """Primal vertices ``0..num_primal-1``; one star per cycle vertex."""

    num_primal: int
    stars: tuple[tuple[int, frozenset[int]], ...]  # (color from 1, neighbours)

    @property
    def num_colors(self) -> int:
        return max((c for c, _ in self.stars), default=0)

    def complexity(self) -> int:
        return sum(len(nb) - 1 for _, nb in self.stars)

    def color_stars(self, i: int) -> list[frozenset[int]]:
        return [nb for c, nb in self.stars if c == i]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from((("p", v) for v in range(self.num_primal)), color=None)
        for j, (c, nb) in enumerate(self.stars):
            g.add_node(("c", j), color=c)
            g.add_edges_from((("c", j), ("p", v)) for v in nb)
        return g

    def code(self) -> tuple:
        return forest_code(self.num_primal, self.stars)

    def violations(self) -> list[str]:
        """Which of the defining properties fail (empty for a valid pattern)."""
        g = self.to_networkx()
        out = []
        if not nx.is_forest(g):
            return ["not a forest"]
        if any(d == 0 for _, d in g.degree()):
            out.append("isolated vertex")
        leaves = [v for v, d in g.degree() if d == 1]
        even, odd = set(), set()
        for leaf in leaves:
            for v, dist in nx.single_source_shortest_path_length(g, leaf).items():
                (even if dist % 2 == 0 else odd).add(v)
        if even & odd:
            out.append("parity classes overlap")
        if even != {("p", v) for v in range(self.num_primal)} or odd != {("c", j) for j in range(len(self.stars))}:
            out.append("primal/cycle split does not follow leaf parity")
        colors = {c for c, _ in self.stars}
        if colors != set(range(1, len(colors) + 1)):
            out.append("cycle colors are not 1..l")
        for (c1, a), (c2, b) in itertools.combinations(self.stars, 2):
            if c1 == c2 and a & b:
                out.append("same-colored cycle vertices at distance 2")
                break
        return out

    def realizing_permutation(self, n: int | None = None) -> tuple[Permutation, list[Permutation]]:
        """A permutation on the primal points whose decomposition matches this pattern."""
        n = self.num_primal if n is None else n
        factors = []
        for i in range(1, self.num_colors + 1):
            factors.append(Permutation.from_cycles(n, [sorted(nb) for nb in self.color_stars(i)]))
        return compose_all(factors, n), factors


def _tree_code(adj: dict, label: dict, root, parent) -> str:
    kids = sorted(_tree_code(adj, label, c, root) for c in adj[root] if c != parent)
    return "(" + label[root] + "".join(kids) + ")"


def _centers(adj: dict, nodes: list) -> list:
    if len(nodes) <= 2:
        return nodes
    deg = {v: len(adj[v]) for v in nodes}
    layer = [v for v in nodes if deg[v] <= 1]
    left = len(nodes)
    while left > 2:
        if not layer:
            raise ValueError("not a forest")
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return layer


def forest_code(num_primal: int, stars: Sequence[tuple[int, frozenset[int]]]) -> tuple:
    """Canonical code of a colored forest: sorted per-tree AHU codes from the centers.

    Raises ValueError when the graph has a cycle.
    """
    adj: dict = {("p", v): [] for v in range(num_primal)}
    label = {("p", v): "p" for v in range(num_primal)}
    for j, (c, nb) in enumerate(stars):
        node = ("c", j)
        adj[node] = [("p", v) for v in nb]
        label[node] = f"c{c}"
        for v in nb:
            adj[("p", v)].append(node)
    seen, codes = set(), []
    for start in adj:
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        codes.append(min(_tree_code(adj, label, c, None) for c in _centers(adj, comp)))
    return tuple(sorted(codes))


def _partitions(t: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = t if largest is None else largest
    if t == 0:
        yield ()
        return
    for p in range(min(t, largest), 0, -1):
        for rest in _partitions(t - p, p):
            yield (p,) + rest


def _forests(degrees: Sequence[int]) -> Iterator[tuple[int, list[frozenset[int]]]]:
    """Uncolored forests whose cycle vertices have the given degrees."""

    def rec(j: int, num_primal: int, comp: list[int], stars: list[frozenset[int]]):
        if j == len(degrees):
            yield num_primal, list(stars)
            return
        d = degrees[j]
        by_comp: dict[int, list[int]] = {}
        for v in range(num_primal):
            by_comp.setdefault(comp[v], []).append(v)
        comps = sorted(by_comp)
        for r in range(0, min(d, len(comps)) + 1):
            for chosen in itertools.combinations(comps, r):
                for reps in itertools.product(*(by_comp[c] for c in chosen)):
                    fresh = list(range(num_primal, num_primal + d - r))
                    nb = frozenset(reps) | frozenset(fresh)
                    new_comp = comp + [None] * len(fresh)
                    target = min(chosen) if chosen else num_primal
                    merged = set(chosen)
                    new_comp = [target if (c in merged or c is None) else c for c in new_comp]
                    yield from rec(j + 1, num_primal + len(fresh), new_comp, stars + [nb])

    yield from rec(0, 0, [], [])


@functools.lru_cache(maxsize=None)
def enumerate_patterns(t: int) -> tuple[CyclePattern, ...]:
    """All cycle patterns of complexity ``t``, one per isomorphism type."""
    if t < 1:
        raise ValueError("t must be at least 1")
    found: dict[tuple, CyclePattern] = {}
    for parts in _partitions(t):
        degrees = [p + 1 for p in parts]
        shapes_seen: set[tuple] = set()
        for num_primal, stars in _forests(degrees):
            shape = forest_code(num_primal, [(0, s) for s in stars])
            if shape in shapes_seen:
                continue
            shapes_seen.add(shape)
            m = len(stars)
            for ell in range(1, m + 1):
                for colors in itertools.product(range(1, ell + 1), repeat=m):
                    if len(set(colors)) != ell:
                        continue
                    if any(
                        colors[a] == colors[b] and stars[a] & stars[b]
                        for a, b in itertools.combinations(range(m), 2)
                    ):
                        continue
                    colored = tuple(sorted(zip(colors, stars), key=lambda cs: (cs[0], sorted(cs[1]))))
                    code = forest_code(num_primal, colored)
                    if code not in found:
                        found[code] = CyclePattern(num_primal, colored)
    return tuple(sorted(found.values(), key=lambda p: (p.num_primal, p.num_colors, p.code())))


# ---------------------------------------------------------------------------
# realization


def hashed_cycles(sigma: Permutation, h: Sequence[int]) -> list[frozenset[int]] | None:
    """Hash images of sigma's cycles, or None when h is not injective on the support."""
    sup = sigma.support()
    if len({h[v] for v in sup}) != len(sup):
        return None
    return sorted((frozenset(h[v] for v in cyc) for cyc in sigma.cycles()), key=sorted)


def realizes_color(sigma: Permutation, h: Sequence[int], pattern: CyclePattern, i: int) -> bool:
    """Whether sigma's hashed cycle graph is the color-i part of the pattern.

    Primal vertex ``j`` of the pattern carries color ``j``.
    """
    cyc = hashed_cycles(sigma, h)
    if cyc is None:
        return False
    return sorted(cyc, key=sorted) == sorted(pattern.color_stars(i), key=sorted)


def _cycle_sizes(stars: Iterable[frozenset[int]]) -> tuple[int, ...]:
    return tuple(sorted(len(s) for s in stars))


def realize_pattern(
    pattern: CyclePattern, h: Sequence[int], autos: Sequence[Permutation], isos: Sequence[Permutation]
) -> list[Permutation] | None:
    """Factors sigma_1..sigma_l (last one from ``isos``) realizing the pattern up to relabelling its primal vertices."""
    ell = pattern.num_colors
    k = pattern.num_primal
    target = pattern.code()
    per_color = []
    for i in range(1, ell + 1):
        want = _cycle_sizes(pattern.color_stars(i))
        pool = isos if i == ell else autos
        cands = []
        for s in pool:
            cyc = hashed_cycles(s, h)
            if cyc is not None and _cycle_sizes(cyc) == want:
                cands.append((s, cyc))
        if not cands:
            return None
        per_color.append(cands)

    parent = list(range(k))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    chosen: list[tuple[Permutation, list[frozenset[int]]]] = []

    def rec(i: int) -> list[Permutation] | None:
        if i == ell:
            stars = [(j + 1, s) for j, (_, cyc) in enumerate(chosen) for s in cyc]
            used = set().union(*(s for _, s in stars))
            if used != set(range(k)) or forest_code(k, stars) != target:
                return None
            return [s for s, _ in chosen]
        for s, cyc in per_color[i]:
            saved = parent[:]
            ok = True
            for star in cyc:
                roots = {find(v) for v in star}
                if len(roots) != len(star):
                    ok = False
                    break
                r0 = min(roots)
                for r in roots:
                    parent[r] = r0
            if ok:
                chosen.append((s, cyc))
                hit = rec(i + 1)
                if hit is not None:
                    return hit
                chosen.pop()
            parent[:] = saved
        return None

    return rec(0)


@dataclass(frozen=True)
class ComplexityWitness:
    sigma: Permutation
    factors: tuple[Permutation, ...]
    pattern: CyclePattern
    hash: tuple[int, ...]


def solve(x: ColoredHypergraph, y: ColoredHypergraph, t: int) -> ComplexityWitness | None:
    n = x.n
    if x.n != y.n or t < 0:
        return None
    if t == 0:
        ident = Permutation.identity(n)
        return ComplexityWitness(ident, (), CyclePattern(0, ()), ()) if is_isomorphism(ident, x, y) else None
    coset = iso_coset_of(x, y)
    if coset is None:
        return None
    bound = min(2 * t, n)
    autos = minimal_complexity_elements(Coset(coset.group, Permutation.identity(n)), bound)
    isos = autos if x == y else minimal_complexity_elements(coset, bound)
    if not isos:
        return None
    for pattern in enumerate_patterns(t):
        k = pattern.num_primal
        if k > n:
            continue
        for h in splitters.build(n, k):
            factors = realize_pattern(pattern, h, autos, isos)
            if factors is not None:
                sigma = compose_all(factors, n)
                if sigma.complexity() != t:
                    raise AssertionError(f"pattern search produced complexity {sigma.complexity()} != {t}")
                return ComplexityWitness(sigma, tuple(factors), pattern, tuple(h))
    return None


def exact_complexity_iso(x: ColoredHypergraph, y: ColoredHypergraph, t: int, d: int | None = None) -> Permutation | None:
    """An isomorphism x -> y of Cayley complexity exactly ``t``, or None."""
    if d is not None and max(max_hyperedge_size(x), max_hyperedge_size(y)) > d:
        raise ValueError(f"hyperedges larger than d={d}")
    w = solve(x, y, t)
    return None if w is None else w.sigma
