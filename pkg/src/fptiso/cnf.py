"""CNF formulas over the variables ``x[u,v]`` meaning "u is mapped to v"."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .perm import Permutation


class Lit(NamedTuple):
    u: int
    v: int
    negated: bool = False

    def value(self, p: Permutation) -> bool:
        return (p.images[self.u] == self.v) != self.negated

    def __str__(self) -> str:
        return ("~" if self.negated else "") + f"x[{self.u},{self.v}]"


Clause = tuple[Lit, ...]


@dataclass(frozen=True)
class CnfFormula:
    clauses: tuple[Clause, ...] = ()

    @classmethod
    def of(cls, clauses: Iterable[Iterable[Sequence]]) -> "CnfFormula":
        """Build from ``[[(u, v, neg), ...], ...]``; ``neg`` defaults to False."""
        out = []
        for cl in clauses:
            lits = []
            for lit in cl:
                lit = tuple(lit)
                if len(lit) == 2:
                    lit = lit + (False,)
                if len(lit) != 3:
                    raise ValueError(f"bad literal {lit}")
                u, v, neg = lit
                if isinstance(u, bool) or isinstance(v, bool) or not isinstance(u, int) or not isinstance(v, int):
                    raise ValueError(f"literal vertices must be integers: {lit}")
                if u < 0 or v < 0:
                    raise ValueError(f"negative vertex in literal {lit}")
                lits.append(Lit(u, v, bool(neg)))
            out.append(tuple(lits))
        return cls(tuple(out))

    @classmethod
    def true(cls) -> "CnfFormula":
        return cls(())

    def __and__(self, other: "CnfFormula") -> "CnfFormula":
        return CnfFormula(self.clauses + other.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def variables(self) -> list[tuple[int, int]]:
        """Distinct variables in first-occurrence order."""
        seen: dict[tuple[int, int], None] = {}
        for cl in self.clauses:
            for lit in cl:
                seen.setdefault((lit.u, lit.v), None)
        return list(seen)

    @property
    def size(self) -> int:
        return len(self.variables())

    def vertices(self) -> set[int]:
        return {w for cl in self.clauses for lit in cl for w in (lit.u, lit.v)}

    def check_range(self, n: int) -> None:
        bad = [w for w in self.vertices() if w >= n]
        if bad:
            raise ValueError(f"formula mentions vertex {max(bad)} outside 0..{n - 1}")

    def to_json(self) -> list:
        return [[[l.u, l.v, l.negated] for l in cl] for cl in self.clauses]

    @classmethod
    def from_json(cls, data) -> "CnfFormula":
        if not isinstance(data, list) or not all(isinstance(cl, list) for cl in data):
            raise ValueError("formula must be a list of clauses")
        return cls.of(data)

    def __str__(self) -> str:
        if not self.clauses:
            return "true"
        return " & ".join("(" + " | ".join(map(str, cl)) + ")" for cl in self.clauses)


def unit(u: int, v: int, negated: bool = False) -> CnfFormula:
    return CnfFormula(((Lit(u, v, negated),),))


def satisfies(p: Permutation, f: CnfFormula) -> bool:
    im = p.images
    return all(any((im[l.u] == l.v) != l.negated for l in cl) for cl in f.clauses)


def class_satisfies(p: Permutation, f: CnfFormula, class_subset: Iterable[Iterable[int]], all_classes=None) -> bool:
    """Every clause has a literal rooted in a vertex of ``class_subset`` that ``p`` makes true."""
    rooted = set().union(*map(set, class_subset)) if class_subset else set()
    im = p.images
    return all(any(l.u in rooted and (im[l.u] == l.v) != l.negated for l in cl) for cl in f.clauses)


def translate(f: CnfFormula, p: Permutation) -> CnfFormula:
    """Replace each variable ``x[u,v]`` by ``x[u, p(v)]``."""
    im = p.images
    return CnfFormula(tuple(tuple(Lit(l.u, im[l.v], l.negated) for l in cl) for cl in f.clauses))


@dataclass(frozen=True)
class PartialAssignment:
    values: Mapping[tuple[int, int], bool]

    def forced(self) -> dict[int, int]:
        """Vertices whose image is fixed to 1 by the assignment."""
        return {u: v for (u, v), b in self.values.items() if b}

    def forbidden(self) -> list[tuple[int, int]]:
        """Pairs set to 0 whose row has no forced image."""
        forced = self.forced()
        return sorted((u, v) for (u, v), b in self.values.items() if not b and u not in forced)

    def satisfies(self, f: CnfFormula) -> bool:
        return all(any(self.values[(l.u, l.v)] != l.negated for l in cl) for cl in f.clauses)

    def column_consistent(self) -> bool:
        targets = list(self.forced().values())
        return len(targets) == len(set(targets))


def enumerate_partial_assignments(f: CnfFormula, n: int) -> Iterator[PartialAssignment]:
    """All 0/1 assignments to the variables of ``f`` respecting the row rule.

    Each vertex gets at most one image set to 1, and exactly one when every
    variable of its row occurs in ``f``.
    """
    rows: dict[int, list[int]] = {}
    for u, v in f.variables():
        rows.setdefault(u, []).append(v)
    row_items = sorted(rows.items())
    per_row = []
    for u, vs in row_items:
        vs = sorted(vs)
        options = []
        if len(vs) < n:
            options.append(None)
        options.extend(vs)
        per_row.append((u, vs, options))
    for choice in itertools.product(*(opts for _, _, opts in per_row)):
        vals = {}
        for (u, vs, _), pick in zip(per_row, choice):
            for v in vs:
                vals[(u, v)] = v == pick
        yield PartialAssignment(vals)
