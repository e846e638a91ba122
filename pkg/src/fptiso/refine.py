"""Colour refinement (1-dimensional Weisfeiler-Leman) on colored hypergraphs.

Several hypergraphs can be refined jointly; colors then mean the same thing
across all of them, which is what an isomorphism test needs.
"""

from __future__ import annotations

from typing import Sequence

from .hypergraph import ColoredHypergraph, mask_members


def _incidence(x: ColoredHypergraph):
    members = {m: mask_members(m) for m in x.edge_masks}
    out_arcs: list[list[tuple[int, int]]] = [[] for _ in range(x.n)]
    in_arcs: list[list[tuple[int, int]]] = [[] for _ in range(x.n)]
    for u, v, c in x.directed:
        out_arcs[u].append((v, c))
        in_arcs[v].append((u, c))
    return members, out_arcs, in_arcs


def refine_jointly(
    graphs: Sequence[ColoredHypergraph], colorings: Sequence[Sequence[int]] | None = None
) -> list[list[int]]:
    """Stable colorings of ``graphs`` started from ``colorings`` (default: vertex colors).

    The returned ids are dense, shared across graphs, and assigned by sorting
    signatures, so they do not depend on vertex names.
    """
    if colorings is None:
        colorings = [g.colors for g in graphs]
    pre = [_incidence(g) for g in graphs]
    # canonical dense ids for the start colors
    palette = sorted({c for col in colorings for c in col})
    rank = {c: i for i, c in enumerate(palette)}
    cols = [[rank[c] for c in col] for col in colorings]
    count = len(palette)
    while True:
        sigs = []
        for g, (members, outs, ins), col in zip(graphs, pre, cols):
            per = []
            for v in range(g.n):
                edges = sorted(tuple(sorted(col[w] for w in members[m])) for m in g.incident[v])
                o = sorted((c, col[w]) for w, c in outs[v])
                i = sorted((c, col[w]) for w, c in ins[v])
                per.append((col[v], tuple(edges), tuple(o), tuple(i)))
            sigs.append(per)
        distinct = sorted({s for per in sigs for s in per})
        if len(distinct) == count:
            return cols
        rank = {s: i for i, s in enumerate(distinct)}
        cols = [[rank[s] for s in per] for per in sigs]
        count = len(distinct)


def refine(x: ColoredHypergraph, coloring: Sequence[int] | None = None) -> list[int]:
    return refine_jointly([x], None if coloring is None else [coloring])[0]


def cells(coloring: Sequence[int]) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for v, c in enumerate(coloring):
        out.setdefault(c, []).append(v)
    return out
