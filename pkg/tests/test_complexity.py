import itertools

import pytest

import corpus
from fptiso.complexity import (
    CyclePattern,
    cycle_graph,
    enumerate_patterns,
    exact_complexity_iso,
    forest_code,
    is_complexity_additive,
    realize_pattern,
    realizes_color,
    solve,
)
from fptiso.groups import Coset, GeneratedGroup
from fptiso.hypergraph import ColoredHypergraph, is_isomorphism
from fptiso.oracle import brute_exact_complexity_iso, peel_minimal_factors
from fptiso.perm import Permutation, compose, compose_all

P = Permutation.parse
PATH3 = ColoredHypergraph.graph(3, [(0, 1), (1, 2)])
C4 = ColoredHypergraph.graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def star(*pts):
    return frozenset(pts)


def test_figure_cycle_graph():
    factors = [P("(0 1 2)(4 5 6)", 10), P("(2 3)", 10), P("(2 4)(7 8 9)", 10)]
    cg = cycle_graph(factors)
    assert cg.primal == tuple(range(10))
    assert [c for c, _ in cg.cycles] == [1, 1, 2, 3, 3]
    assert sorted(sorted(pts) for _, pts in cg.cycles) == [[0, 1, 2], [2, 3], [2, 4], [4, 5, 6], [7, 8, 9]]
    assert len(cg.edges()) == 13
    assert cg.is_forest()
    assert is_complexity_additive(factors)


def test_small_cycle_graphs():
    cg = cycle_graph([P("(0 1)", 2)])
    assert cg.cycles == ((1, (0, 1)),) and len(cg.edges()) == 2
    two = cycle_graph([P("(0 1)", 4), P("(2 3)", 4)])
    assert [c for c, _ in two.cycles] == [1, 2]
    assert not set(two.cycles[0][1]) & set(two.cycles[1][1])


def test_additivity_examples():
    assert is_complexity_additive([P("(0 1)", 4), P("(2 3)", 4)])
    assert not is_complexity_additive([P("(0 1)", 2), P("(0 1)", 2)])
    assert is_complexity_additive([P("(0 1)", 3), P("(1 2)", 3)])
    with pytest.raises(ValueError):
        is_complexity_additive([Permutation.identity(3)])


def test_pattern_counts():
    assert [len(enumerate_patterns(t)) for t in range(1, 5)] == [1, 4, 21, 160]
    with pytest.raises(ValueError):
        enumerate_patterns(0)


def test_t1_and_t2_patterns():
    (p1,) = enumerate_patterns(1)
    assert p1.num_primal == 2 and p1.num_colors == 1 and p1.stars == ((1, star(0, 1)),)
    shapes = {(p.num_primal, p.num_colors, tuple(sorted(len(nb) for _, nb in p.stars))) for p in enumerate_patterns(2)}
    assert shapes == {(3, 1, (3,)), (4, 1, (2, 2)), (4, 2, (2, 2)), (3, 2, (2, 2))}


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_patterns_are_valid_and_realizable(t):
    codes = set()
    for p in enumerate_patterns(t):
        assert p.violations() == []
        assert p.complexity() == t
        sigma, factors = p.realizing_permutation()
        assert sigma.complexity() == t
        assert is_complexity_additive(factors)
        codes.add(p.code())
    assert len(codes) == len(enumerate_patterns(t))


def test_violations_detect_bad_patterns():
    assert CyclePattern(3, ((1, star(0, 1)),)).violations()  # isolated primal vertex
    assert "same-colored cycle vertices at distance 2" in CyclePattern(3, ((1, star(0, 1)), (1, star(1, 2)))).violations()
    assert CyclePattern(2, ((2, star(0, 1)),)).violations()
    assert CyclePattern(2, ((1, star(0, 1)), (2, star(0, 1)))).violations() == ["not a forest"]


def test_forest_code_ignores_labels():
    a = forest_code(3, [(1, star(0, 1)), (2, star(1, 2))])
    b = forest_code(3, [(1, star(2, 0)), (2, star(0, 1))])
    c = forest_code(3, [(2, star(0, 1)), (1, star(1, 2))])
    assert a == b == c
    assert a != forest_code(3, [(1, star(0, 1, 2))])
    with pytest.raises(ValueError):
        forest_code(2, [(1, star(0, 1)), (2, star(0, 1))])


def test_realizes_color_examples():
    (p1,) = enumerate_patterns(1)
    assert realizes_color(P("(0 1)", 2), [0, 1], p1, 1)
    assert not realizes_color(P("(0 1 2)", 3), [0, 1, 2], p1, 1)
    assert not realizes_color(P("(0 1)(2 3)", 4), [0, 1, 0, 1], p1, 1)
    assert not realizes_color(P("(0 1)", 2), [0, 0], p1, 1)


def test_realize_pattern_relabels_primal_vertices():
    # shared-vertex pattern: color 1 on {0,1}, color 2 on {1,2}
    p = CyclePattern(3, ((1, star(0, 1)), (2, star(1, 2))))
    autos = [P("(1 2)", 3), P("(0 2)", 3)]
    got = realize_pattern(p, [0, 1, 2], autos, autos)
    assert got is not None and compose_all(got, 3).complexity() == 2


def _stars(factors):
    pts = sorted(set().union(*(f.support() for f in factors)))
    name = {v: i for i, v in enumerate(pts)}
    return len(pts), [(i + 1, frozenset(name[v] for v in cyc)) for i, f in enumerate(factors) for cyc in f.cycles()]


def _code(factors):
    k, stars = _stars(factors)
    try:
        return forest_code(k, stars)
    except ValueError:
        return None


def _sym(n):
    return [Permutation(list(p)) for p in itertools.permutations(range(n))]


def test_forest_lemma_on_two_and_three_factor_decompositions():
    for n, parts in ((5, 2), (4, 3)):
        perms = [p for p in _sym(n) if not p.is_identity()]
        for fs in itertools.product(perms, repeat=parts):
            if is_complexity_additive(list(fs)):
                assert cycle_graph(list(fs)).is_forest()


def test_patterns_complete_and_sound():
    codes = {t: {p.code() for p in enumerate_patterns(t)} for t in range(1, 5)}
    for n in range(2, 7):
        sym = Coset(GeneratedGroup.symmetric(n), Permutation.identity(n))
        perms = _sym(n)
        for sigma in perms:
            t = sigma.complexity()
            if not 1 <= t <= 4:
                continue
            decomps = [[sigma], peel_minimal_factors(sigma, sym)]
            if n <= 4:
                decomps += [[a, compose(a.inverse(), sigma)] for a in perms if not a.is_identity() and a != sigma]
            for fs in decomps:
                code = _code(fs)
                # complete: an additive decomposition matches; sound: a match forces complexity t
                assert (code in codes[t]) == is_complexity_additive(fs)
                for other in set(codes) - {t}:
                    assert code not in codes[other]


def test_examples():
    assert exact_complexity_iso(PATH3, PATH3, 1) == P("(0 2)", 3)
    rot = exact_complexity_iso(C4, C4, 3)
    assert rot in (P("(0 1 2 3)", 4), P("(0 3 2 1)", 4))
    assert exact_complexity_iso(C4, C4, 5) is None
    assert exact_complexity_iso(C4, C4, 0) == Permutation.identity(4)
    with pytest.raises(ValueError):
        exact_complexity_iso(ColoredHypergraph.build(3, [(0, 1, 2)]), ColoredHypergraph.build(3, [(0, 1, 2)]), 1, d=2)


def test_witness_trail():
    w = solve(C4, C4, 3)
    assert compose_all(w.factors, 4) == w.sigma
    assert is_complexity_additive(list(w.factors))
    assert cycle_graph(list(w.factors)).is_forest()
    assert len(w.factors) == w.pattern.num_colors


def test_matches_brute_force():
    rng = corpus.seeded(51)
    for _ in range(250):
        x, y, t = corpus.complexity_instance(rng)
        w = solve(x, y, t)
        want = brute_exact_complexity_iso(x, y, t)
        assert (w is None) == (want is None)
        if w is not None:
            assert is_isomorphism(w.sigma, x, y) and w.sigma.complexity() == t
            if w.factors:
                assert cycle_graph(list(w.factors)).is_forest()
