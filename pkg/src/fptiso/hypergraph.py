"""Vertex-colored hypergraphs with optional colored directed edges.

Hyperedges are kept as integer bitmasks so that testing whether the image
of an edge is present is a single set lookup.  Graphs are the case where
every hyperedge has two vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .perm import DomainMismatch, Permutation


class InstanceError(ValueError):
    """Malformed instance data."""


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def mask_members(mask: int) -> list[int]:
    out, v = [], 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def image_mask(mask: int, images: Sequence[int]) -> int:
    m, v = 0, 0
    while mask:
        if mask & 1:
            m |= 1 << images[v]
        mask >>= 1
        v += 1
    return m


@dataclass(frozen=True)
class ColoredHypergraph:
    n: int
    edge_masks: frozenset[int]
    colors: tuple[int, ...]
    directed: frozenset[tuple[int, int, int]] = frozenset()
    _incident: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def build(
        cls,
        n: int,
        hyperedges: Iterable[Iterable[int]] = (),
        colors: Sequence[int] | None = None,
        directed: Iterable[Sequence[int]] = (),
    ) -> "ColoredHypergraph":
        if n < 0:
            raise InstanceError("n must be non-negative")
        cols = tuple(int(c) for c in colors) if colors is not None else (0,) * n
        if len(cols) != n:
            raise InstanceError(f"{len(cols)} colors for {n} vertices")
        if any(c < 0 for c in cols):
            raise InstanceError("colors must be non-negative integers")
        masks = set()
        for e in hyperedges:
            e = list(e)
            for v in e:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise InstanceError(f"hyperedge {e} has a vertex outside 0..{n - 1}")
            if len(set(e)) != len(e):
                raise InstanceError(f"hyperedge {e} repeats a vertex")
            masks.add(to_mask(e))
        arcs = set()
        for d in directed:
            if len(d) != 3:
                raise InstanceError(f"directed edge {list(d)} must be [u, v, color]")
            u, v, c = (int(z) for z in d)
            if not (0 <= u < n and 0 <= v < n):
                raise InstanceError(f"directed edge {list(d)} out of range")
            arcs.add((u, v, c))
        return cls(n, frozenset(masks), cols, frozenset(arcs))

    @classmethod
    def graph(cls, n: int, edges: Iterable[Iterable[int]] = (), colors: Sequence[int] | None = None) -> "ColoredHypergraph":
        return cls.build(n, edges, colors)

    # views ---------------------------------------------------------------

    @property
    def hyperedges(self) -> list[tuple[int, ...]]:
        return sorted(tuple(mask_members(m)) for m in self.edge_masks)

    @property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge masks incident to each vertex."""
        if not self._incident:
            inc: list[list[int]] = [[] for _ in range(self.n)]
            for m in self.edge_masks:
                for v in mask_members(m):
                    inc[v].append(m)
            object.__setattr__(self, "_incident", tuple(tuple(sorted(x)) for x in inc))
        return self._incident

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for m in self.incident[v]:
            out.update(mask_members(m))
        out.discard(v)
        return out

    def has_edge(self, *vertices: int) -> bool:
        return to_mask(vertices) in self.edge_masks

    def color_classes(self) -> "ColorClasses":
        return ColorClasses.from_colors(self.colors)

    def is_graph(self) -> bool:
        return all(m.bit_count() == 2 for m in self.edge_masks)

    def with_colors(self, colors: Sequence[int]) -> "ColoredHypergraph":
        return ColoredHypergraph(self.n, self.edge_masks, tuple(colors), self.directed)

    def relabel(self, p: Permutation) -> "ColoredHypergraph":
        """The image of this hypergraph under ``p``."""
        im = p.images
        cols = [0] * self.n
        for u in range(self.n):
            cols[im[u]] = self.colors[u]
        return ColoredHypergraph(
            self.n,
            frozenset(image_mask(m, im) for m in self.edge_masks),
            tuple(cols),
            frozenset((im[u], im[v], c) for u, v, c in self.directed),
        )

    # serialization ------------------------------------------------------

    def to_json(self) -> dict:
        out = {"n": self.n, "hyperedges": [list(e) for e in self.hyperedges], "colors": list(self.colors)}
        if self.directed:
            out["directed"] = [list(d) for d in sorted(self.directed)]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "ColoredHypergraph":
        if not isinstance(data, Mapping) or "n" not in data:
            raise InstanceError("instance must be an object with an 'n' field")
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise InstanceError("'n' must be an integer")
        return cls.build(
            n,
            data.get("hyperedges", []),
            data.get("colors"),
            data.get("directed", []),
        )


@dataclass(frozen=True)
class ColorClasses:
    classes: tuple[frozenset[int], ...]

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> "ColorClasses":
        by: dict[int, set[int]] = {}
        for v, c in enumerate(colors):
            by.setdefault(c, set()).add(v)
        return cls(tuple(frozenset(by[c]) for c in sorted(by)))

    def is_bounded(self, b: int) -> bool:
        return all(len(c) <= b for c in self.classes)

    def max_size(self) -> int:
        return max((len(c) for c in self.classes), default=0)

    def class_index(self) -> dict[int, int]:
        return {v: i for i, c in enumerate(self.classes) for v in c}

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)


def is_isomorphism(p: Permutation, x: ColoredHypergraph, y: ColoredHypergraph) -> bool:
    if not (p.n == x.n == y.n):
        raise DomainMismatch(f"sizes differ: perm {p.n}, graphs {x.n} and {y.n}")
    im = p.images
    if any(y.colors[im[u]] != c for u, c in enumerate(x.colors)):
        return False
    if len(x.edge_masks) != len(y.edge_masks) or len(x.directed) != len(y.directed):
        return False
    ye = y.edge_masks
    if any(image_mask(m, im) not in ye for m in x.edge_masks):
        return False
    yd = y.directed
    return all((im[u], im[v], c) in yd for u, v, c in x.directed)


def is_automorphism(p: Permutation, x: ColoredHypergraph) -> bool:
    return is_isomorphism(p, x, x)


def max_hyperedge_size(x: ColoredHypergraph) -> int:
    return max((m.bit_count() for m in x.edge_masks), default=0)


def blue_degree(x: ColoredHypergraph, v: int, blue: Iterable[int]) -> int:
    blue = set(blue)
    return len(x.neighbors(v) & blue)


def induced(x: ColoredHypergraph, vertices: Iterable[int]) -> tuple[ColoredHypergraph, list[int]]:
    """Subhypergraph on ``vertices``, relabelled in increasing order.

    Returns the hypergraph and the list mapping new indices to old ones.
    Hyperedges and directed edges survive only when entirely inside.
    """
    pts = sorted(set(vertices))
    idx = {v: i for i, v in enumerate(pts)}
    inside = to_mask(pts)
    edges = [[idx[v] for v in mask_members(m)] for m in x.edge_masks if m & ~inside == 0]
    arcs = [(idx[u], idx[v], c) for u, v, c in x.directed if u in idx and v in idx]
    return ColoredHypergraph.build(len(pts), edges, [x.colors[v] for v in pts], arcs), pts
