"""Colored graph automorphism moving exactly k Blue vertices, Red classes of size <= 3.

Pipeline: stabilize the coloring (refine, complement dense class blocks, pin
Red classes with too many Blue neighbours), contract each component of
perfect matchings between Red classes onto one root class, turn the
remaining Red vertices into hyperedges over Blue plus one fresh vertex per
Red class, and run the exact-weight automorphism search on the result.

Contraction keeps the coupling between classes exactly: every class R of a
component is pulled back to the root through the matchings, and for each
root vertex v the Blue neighbourhoods of its pulled-back partners are tied
together by directed Blue-Blue edges colored with the pair of classes.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .exact_weight import exact_cnf_hga
from .groups import restrict
from .hypergraph import ColoredHypergraph, InstanceError, induced, is_automorphism
from .oracle import automorphism_group
from .perm import Permutation
from .refine import cells, refine

log = logging.getLogger(__name__)

Edge = frozenset


@dataclass(frozen=True)
class ColGaInstance:
    x: ColoredHypergraph
    red: frozenset[int]
    blue: frozenset[int]
    k: int

    def __post_init__(self):
        x = self.x
        if not x.is_graph():
            raise InstanceError("Col-GA needs a graph (all edges of size 2)")
        if x.directed:
            raise InstanceError("Col-GA input cannot carry directed edges")
        if self.red & self.blue or (self.red | self.blue) != frozenset(range(x.n)):
            raise InstanceError("red and blue must partition the vertices")
        if self.k < 0:
            raise InstanceError("k must be non-negative")
        by = cells(x.colors)
        for c, vs in by.items():
            kinds = {v in self.red for v in vs}
            if len(kinds) > 1:
                raise InstanceError(f"color {c} mixes red and blue vertices")
            if True in kinds and len(vs) > 3:
                raise InstanceError(f"red color class {c} has {len(vs)} > 3 vertices")

    @classmethod
    def of(cls, x: ColoredHypergraph, red, blue, k: int) -> "ColGaInstance":
        return cls(x, frozenset(red), frozenset(blue), k)

    @classmethod
    def from_json(cls, data: Mapping, k: int | None = None) -> "ColGaInstance":
        x = ColoredHypergraph.from_json(data)
        red = frozenset(data.get("red", []))
        blue = frozenset(data.get("blue", sorted(set(range(x.n)) - red)))
        kk = data.get("k") if k is None else k
        if kk is None:
            raise InstanceError("k missing")
        return cls(x, red, blue, kk)

    def blue_weight(self, p: Permutation) -> int:
        return sum(1 for v in self.blue if p.images[v] != v)


def _edges(x: ColoredHypergraph) -> set[Edge]:
    return {Edge(e) for e in x.hyperedges}


def _rebuild(n: int, edges, colors, directed=()) -> ColoredHypergraph:
    return ColoredHypergraph.build(n, [sorted(e) for e in edges], colors, directed)


# ---------------------------------------------------------------------------
# steps 1-3


def color_refine(x: ColoredHypergraph) -> ColoredHypergraph:
    return x.with_colors(refine(x))


def local_complement(x: ColoredHypergraph) -> ColoredHypergraph:
    """Complement each class, and each pair of classes, whose block is more than half full."""
    by = cells(x.colors)
    keys = sorted(by)
    edges = _edges(x)
    for a in keys:
        pts = by[a]
        block = {Edge(p) for p in itertools.combinations(pts, 2)}
        have = edges & block
        if 2 * len(have) > len(block):
            edges = (edges - have) | (block - have)
    for a, b in itertools.combinations(keys, 2):
        block = {Edge((u, v)) for u in by[a] for v in by[b]}
        have = edges & block
        if 2 * len(have) > len(block):
            edges = (edges - have) | (block - have)
    return _rebuild(x.n, edges, x.colors)


def fix_heavy_classes(x: ColoredHypergraph, red: frozenset[int], blue: frozenset[int], k: int) -> tuple[ColoredHypergraph, bool]:
    """Give every vertex of a Red class with more than k Blue neighbours its own color."""
    cols = list(x.colors)
    fresh = max(cols, default=-1) + 1
    changed = False
    for c, pts in sorted(cells(x.colors).items()):
        if len(pts) < 2 or pts[0] not in red:
            continue
        if len(x.neighbors(pts[0]) & blue) > k:
            for v in pts:
                cols[v] = fresh
                fresh += 1
            changed = True
    return x.with_colors(cols), changed


@dataclass
class Trace:
    """Intermediate structures, kept for auditing the automorphism-preservation claims."""

    complemented: list[tuple[ColoredHypergraph, ColoredHypergraph]] = field(default_factory=list)
    stabilized: ColoredHypergraph | None = None
    contracted: ColoredHypergraph | None = None
    encoded: ColoredHypergraph | None = None
    encoded_blue: list[int] = field(default_factory=list)
    restarts: int = 0


def stabilize(x: ColoredHypergraph, red: frozenset[int], blue: frozenset[int], k: int, trace: Trace | None = None) -> ColoredHypergraph:
    while True:
        x = color_refine(x)
        y = local_complement(x)
        if trace is not None:
            trace.complemented.append((x, y))
        x, changed = fix_heavy_classes(y, red, blue, k)
        if not changed:
            return x


# ---------------------------------------------------------------------------
# step 4


@dataclass(frozen=True)
class Component:
    root: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]  # root first
    pull: tuple[dict[int, int], ...]  # root vertex -> partner in each class
    groups: tuple[dict[int, frozenset[int]], ...]  # root vertex -> Blue nbhd of its partner
    cycle: tuple[int, ...] | None  # (v1, v2, v3) when only rotations survive

    def attached(self) -> list[int]:
        return [i for i, g in enumerate(self.groups) if any(g.values())]

    def fiber_blue(self, v: int) -> frozenset[int]:
        return frozenset().union(*(g[v] for g in self.groups))


@dataclass(frozen=True)
class Contraction:
    x: ColoredHypergraph  # dropped Red vertices are isolated and singleton-colored
    red: frozenset[int]  # retained Red vertices
    components: tuple[Component, ...]


class Restart(Exception):
    def __init__(self, x: ColoredHypergraph):
        super().__init__("split a class by orbits")
        self.x = x


def _red_class_graph(x: ColoredHypergraph, red: frozenset[int]):
    by = {c: pts for c, pts in cells(x.colors).items() if pts[0] in red}
    adj: dict[int, dict[int, dict[int, int]]] = {c: {} for c in by}
    for a, b in itertools.combinations(sorted(by), 2):
        cross = [(u, v) for u in by[a] for v in by[b] if x.has_edge(u, v)]
        if not cross:
            continue
        m = dict(cross)
        if len(by[a]) != len(by[b]) or len(cross) != len(by[a]) or len(set(m.values())) != len(m):
            raise AssertionError(f"red classes {a},{b} are joined by something other than a perfect matching")
        adj[a][b] = m
        adj[b][a] = {v: u for u, v in m.items()}
    return by, adj


def contract_matching_components(x: ColoredHypergraph, red: frozenset[int], blue: frozenset[int]) -> Contraction:
    """Collapse every multi-class matching component onto its root class.

    Raises ``Restart`` with a refined coloring when some root class is not
    acted on transitively by the component's automorphisms.
    """
    by, adj = _red_class_graph(x, red)
    seen: set[int] = set()
    comps = []
    for c in sorted(by):
        if c in seen or not adj[c]:
            seen.add(c)
            continue
        order, pull = [c], {c: {v: v for v in by[c]}}
        seen.add(c)
        queue = deque([c])
        while queue:
            a = queue.popleft()
            for b in sorted(adj[a]):
                if b not in seen:
                    seen.add(b)
                    pull[b] = {v: adj[a][b][pull[a][v]] for v in by[c]}
                    order.append(b)
                    queue.append(b)
        comps.append((c, order, pull))

    # Case 1 checks first, over all components
    shapes = []
    for c, order, pull in comps:
        pts = [v for cl in order for v in by[cl]]
        nb = set().union(*(x.neighbors(v) & blue for v in pts))
        sub, names = induced(x, pts + sorted(nb))
        where = {v: i for i, v in enumerate(names)}
        h, _ = restrict(automorphism_group(sub), [where[v] for v in by[c]])
        root = by[c]
        orbits = h.orbits()
        if len(orbits) > 1:
            cols = list(x.colors)
            fresh = max(cols) + 1
            for i, o in enumerate(orbits):
                for j in o:
                    cols[root[j]] = fresh + i
            log.info("class %s splits into %d orbits; restarting", root, len(orbits))
            raise Restart(x.with_colors(cols))
        order_h = h.order()
        if order_h == math.factorial(len(root)):
            cycle = None
        elif len(root) == 3 and order_h == 3:
            g = next(gen for gen in h.generators if not gen.is_identity())
            cycle = (root[0], root[g.images[0]], root[g.images[g.images[0]]])
        else:
            raise AssertionError(f"transitive action of order {order_h} on {len(root)} points")
        shapes.append(cycle)

    edges = _edges(x)
    cols = list(x.colors)
    fresh = max(cols, default=-1) + 1
    arcs: list[tuple[int, int, tuple]] = []
    retained = set(red)
    out = []
    for (c, order, pull), cycle in zip(comps, shapes):
        root = tuple(by[c])
        groups = tuple({v: frozenset(x.neighbors(pull[cl][v]) & blue) for v in root} for cl in order)
        comp = Component(root, tuple(tuple(by[cl]) for cl in order), tuple(pull[cl] for cl in order), groups, cycle)
        out.append(comp)
        # drop every non-root class and all its edges
        for cl in order[1:]:
            for w in by[cl]:
                retained.discard(w)
                edges = {e for e in edges if w not in e}
                cols[w] = fresh
                fresh += 1
        for v in root:
            edges = {e for e in edges if v not in e}
            edges |= {Edge((v, u)) for u in comp.fiber_blue(v)}
        colors_of = [x.colors[by[cl][0]] for cl in order]
        live = comp.attached()
        for v in root:
            for i, j in itertools.product(live, repeat=2):
                for u in groups[i][v]:
                    for w in groups[j][v]:
                        arcs.append((u, w, ("link", colors_of[0], colors_of[i], colors_of[j])))
        if cycle is not None and live:
            rim = [comp.fiber_blue(v) for v in cycle]
            for d, dpts in sorted(cells(x.colors).items()):
                if dpts[0] not in blue:
                    continue
                parts = [r & set(dpts) for r in rim]
                for i in range(3):
                    for u in parts[i]:
                        for w in parts[(i + 1) % 3]:
                            arcs.append((u, w, ("cycle", colors_of[0], d, 0)))
    tags = {t: i for i, t in enumerate(sorted({a[2] for a in arcs}))}
    y = _rebuild(x.n, edges, cols, [(u, w, tags[t]) for u, w, t in arcs])
    return Contraction(y, frozenset(retained), tuple(out))


# ---------------------------------------------------------------------------
# step 5


@dataclass(frozen=True)
class Encoding:
    x: ColoredHypergraph  # on Blue + New
    blue: tuple[int, ...]  # new index -> original Blue vertex
    new: dict[int, int]  # Red color -> index of its fresh vertex


def encode_hyperedges(x: ColoredHypergraph, red: frozenset[int], blue: frozenset[int]) -> Encoding:
    """Blue vertices plus one singleton-colored vertex per Red class; Red vertex v becomes {v_C} + N(v)."""
    bl = tuple(sorted(blue))
    idx = {v: i for i, v in enumerate(bl)}
    red_colors = sorted({x.colors[v] for v in red})
    new = {c: len(bl) + i for i, c in enumerate(red_colors)}
    top = max((x.colors[v] for v in bl), default=-1) + 1
    cols = [x.colors[v] for v in bl] + [top + i for i in range(len(red_colors))]
    hyper = [[idx[u] for u in e] for e in x.hyperedges if all(u in blue for u in e)]
    for v in sorted(red):
        hyper.append([new[x.colors[v]]] + sorted(idx[u] for u in x.neighbors(v)))
    arcs = [(idx[u], idx[w], c) for u, w, c in x.directed]
    return Encoding(ColoredHypergraph.build(len(cols), hyper, cols, arcs), bl, new)


# ---------------------------------------------------------------------------
# step 6 and back-translation


def _lift(inst: ColGaInstance, stable: ColoredHypergraph, con: Contraction, enc: Encoding, sigma: Permutation) -> Permutation:
    images = list(range(inst.x.n))
    beta = {}
    for i, v in enumerate(enc.blue):
        beta[v] = enc.blue[sigma.images[i]]
        images[v] = beta[v]

    def moved(s: frozenset[int]) -> frozenset[int]:
        return frozenset(beta[u] for u in s)

    in_comp = {w for comp in con.components for cl in comp.classes for w in cl}
    for c, pts in cells(stable.colors).items():
        if pts[0] not in inst.red or pts[0] in in_comp:
            continue
        nbhd = {v: frozenset(stable.neighbors(v) & inst.blue) for v in pts}
        owner = {s: v for v, s in nbhd.items() if s}
        for v in pts:
            if nbhd[v]:
                images[v] = owner[moved(nbhd[v])]
    for comp in con.components:
        live = comp.attached()
        rho = {v: v for v in comp.root}
        if live:
            g = comp.groups[live[0]]
            owner = {s: v for v, s in g.items()}
            rho = {v: owner[moved(g[v])] for v in comp.root}
        for pull in comp.pull:
            for v in comp.root:
                images[pull[v]] = pull[rho[v]]
    return Permutation(images)


@dataclass(frozen=True)
class ColGaResult:
    sigma: Permutation | None
    trace: Trace


def run(inst: ColGaInstance) -> ColGaResult:
    trace = Trace()
    red, blue, k = inst.red, inst.blue, inst.k
    x = inst.x
    for _ in range(inst.x.n + 1):
        x = stabilize(x, red, blue, k, trace)
        try:
            con = contract_matching_components(x, red, blue)
            break
        except Restart as r:
            trace.restarts += 1
            x = r.x
    else:
        raise AssertionError("more restarts than vertices")
    trace.stabilized = x
    trace.contracted = con.x
    enc = encode_hyperedges(con.x, con.red, blue)
    trace.encoded = enc.x
    trace.encoded_blue = list(enc.blue)
    if k > len(blue):
        return ColGaResult(None, trace)
    sigma = exact_cnf_hga(enc.x, k)
    if sigma is None:
        return ColGaResult(None, trace)
    lifted = _lift(inst, x, con, enc, sigma)
    if not is_automorphism(lifted, inst.x) or inst.blue_weight(lifted) != k:
        raise AssertionError(f"back-translated witness {lifted} fails on the input graph")
    return ColGaResult(lifted, trace)


def colga(inst: ColGaInstance) -> Permutation | None:
    """Partition-preserving automorphism moving exactly k Blue vertices, or None."""
    return run(inst).sigma
