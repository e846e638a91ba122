"""JSON instance files and seeded random generators."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .cnf import CnfFormula
from .hypergraph import ColoredHypergraph, InstanceError

KINDS = ("graph", "hypergraph", "bounded", "redblue", "cnf")


@dataclass(frozen=True)
class InstanceFile:
    x: ColoredHypergraph
    red: tuple[int, ...] | None = None
    blue: tuple[int, ...] | None = None
    formula: CnfFormula | None = None
    params: dict[str, int] = field(default_factory=dict)  # optional "k" / "t"

    def to_json(self) -> dict[str, Any]:
        out = self.x.to_json()
        if self.red is not None:
            out["red"] = list(self.red)
        if self.blue is not None:
            out["blue"] = list(self.blue)
        if self.formula is not None:
            out["formula"] = self.formula.to_json()
        out.update(self.params)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "InstanceFile":
        x = ColoredHypergraph.from_json(data)
        red = blue = None
        for name in ("red", "blue"):
            vals = data.get(name)
            if vals is None:
                continue
            if not isinstance(vals, list) or not all(isinstance(v, int) and 0 <= v < x.n for v in vals):
                raise InstanceError(f"'{name}' must list vertices in 0..{x.n - 1}")
        if "red" in data:
            red = tuple(sorted(data["red"]))
        if "blue" in data:
            blue = tuple(sorted(data["blue"]))
        if red is not None and blue is not None and set(red) & set(blue):
            raise InstanceError("red and blue overlap")
        formula = None
        if "formula" in data:
            try:
                formula = CnfFormula.from_json(data["formula"])
                formula.check_range(x.n)
            except ValueError as e:
                raise InstanceError(str(e)) from None
        params = {}
        for key in ("k", "t"):
            if key in data:
                if not isinstance(data[key], int) or isinstance(data[key], bool):
                    raise InstanceError(f"'{key}' must be an integer")
                params[key] = data[key]
        return cls(x, red, blue, formula, params)


def load(path: str | Path) -> InstanceFile:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise InstanceError(f"{path}: {e}") from None
    return InstanceFile.from_json(data)


def dumps(inst: InstanceFile) -> str:
    return json.dumps(inst.to_json(), sort_keys=True) + "\n"


def load_formula(path: str | Path) -> CnfFormula:
    data = json.loads(Path(path).read_text())
    if isinstance(data, Mapping):
        data = data.get("formula", [])
    return CnfFormula.from_json(data)


# ---------------------------------------------------------------------------
# generators


def random_graph(rng: random.Random, n: int, p: float = 0.4, colors: int = 1) -> ColoredHypergraph:
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return ColoredHypergraph.build(n, edges, [rng.randrange(colors) for _ in range(n)])


def random_hypergraph(rng: random.Random, n: int, d: int = 3, p: float = 0.3, colors: int = 1) -> ColoredHypergraph:
    edges = [e for r in range(2, d + 1) for e in itertools.combinations(range(n), r) if rng.random() < p / r]
    return ColoredHypergraph.build(n, edges, [rng.randrange(colors) for _ in range(n)])


def random_bounded(
    rng: random.Random, n: int, b: int = 3, d: int = 2, p: float = 0.4, symmetric: bool = False
) -> ColoredHypergraph:
    """Hypergraph whose color classes have at most ``b`` vertices.

    With ``symmetric`` the classes are the cycles of a hidden permutation and
    the edge set is closed under it, so the automorphism group is never trivial.
    """
    cols, c = [], 0
    while len(cols) < n:
        cols.extend([c] * rng.randint(1, b))
        c += 1
    cols = cols[:n]
    rng.shuffle(cols)
    if not symmetric:
        return random_hypergraph(rng, n, d, p).with_colors(cols)
    images = list(range(n))
    for c in set(cols):
        cyc = [v for v in range(n) if cols[v] == c]
        for i, v in enumerate(cyc):
            images[v] = cyc[(i + 1) % len(cyc)]
    edges = set()
    for r in range(2, d + 1):
        for e in itertools.combinations(range(n), r):
            if frozenset(e) in edges or rng.random() >= p / (r * b):
                continue
            cur = frozenset(e)
            while cur not in edges:
                edges.add(cur)
                cur = frozenset(images[v] for v in cur)
    return ColoredHypergraph.build(n, [sorted(e) for e in edges], cols)


def random_redblue(rng: random.Random, n: int, p: float = 0.35, blue_colors: int = 1) -> tuple[ColoredHypergraph, list[int], list[int]]:
    """Graph with Red classes of size <= 3; Red colors are disjoint from Blue colors."""
    verts = list(range(n))
    rng.shuffle(verts)
    nred = rng.randint(0, n)
    red, blue = sorted(verts[:nred]), sorted(verts[nred:])
    cols = [0] * n
    i = c = 0
    while i < len(red):
        s = rng.randint(1, 3)
        for v in red[i : i + s]:
            cols[v] = blue_colors + c
        c += 1
        i += s
    for v in blue:
        cols[v] = rng.randrange(blue_colors)
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return ColoredHypergraph.build(n, edges, cols), red, blue


def random_formula(rng: random.Random, n: int, clauses: int = 2, width: int = 2) -> CnfFormula:
    return CnfFormula.of(
        [[(rng.randrange(n), rng.randrange(n), rng.random() < 0.5) for _ in range(rng.randint(1, width))] for _ in range(clauses)]
    )


def generate(kind: str, n: int, seed: int, **params) -> InstanceFile:
    """Reproducible instance: same arguments give the same file."""
    if kind not in KINDS:
        raise InstanceError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if n < 1:
        raise InstanceError("n must be positive")
    rng = random.Random(f"{kind}:{n}:{seed}")
    p = params.get("p", 0.4)
    if not 0 <= p <= 1:
        raise InstanceError("p must lie in [0, 1]")
    if kind == "graph":
        return InstanceFile(random_graph(rng, n, p, params.get("colors", 1)))
    if kind == "hypergraph":
        return InstanceFile(random_hypergraph(rng, n, params.get("d", 3), p, params.get("colors", 1)))
    if kind == "bounded":
        b = params.get("b", 3)
        if b < 1:
            raise InstanceError("b must be positive")
        return InstanceFile(random_bounded(rng, n, b, params.get("d", 2), p, params.get("symmetric", False)))
    if kind == "redblue":
        x, red, blue = random_redblue(rng, n, p, params.get("colors", 1))
        return InstanceFile(x, tuple(red), tuple(blue))
    x = random_graph(rng, n, p)
    return InstanceFile(x, formula=random_formula(rng, n, params.get("clauses", 2), params.get("width", 2)))
