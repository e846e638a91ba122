import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fptiso.hypergraph import (
    ColorClasses,
    ColoredHypergraph,
    InstanceError,
    blue_degree,
    induced,
    is_automorphism,
    is_isomorphism,
    max_hyperedge_size,
)
from fptiso.oracle import brute_automorphisms
from fptiso.perm import DomainMismatch, Permutation, compose

from conftest import permutations

P = Permutation.parse
PATH3 = ColoredHypergraph.graph(3, [(0, 1), (1, 2)])
C4 = ColoredHypergraph.graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def test_isomorphism_examples():
    assert is_isomorphism(Permutation.identity(3), PATH3, PATH3)
    assert is_automorphism(P("(0 2)", 3), PATH3)
    assert not is_automorphism(P("(0 1)", 3), PATH3)


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        is_isomorphism(Permutation.identity(2), PATH3, PATH3)


def test_colors_and_directed_edges_are_respected():
    x = PATH3.with_colors([0, 0, 1])
    assert not is_automorphism(P("(0 2)", 3), x)
    d = ColoredHypergraph.build(3, [], None, [(0, 1, 5), (1, 2, 5), (2, 0, 5)])
    assert is_automorphism(P("(0 1 2)", 3), d)
    assert not is_automorphism(P("(0 1)", 3), d)
    d2 = ColoredHypergraph.build(3, [], None, [(0, 1, 5), (1, 2, 7), (2, 0, 5)])
    assert not is_automorphism(P("(0 1 2)", 3), d2)


def test_utilities():
    assert max_hyperedge_size(C4) == 2
    assert max_hyperedge_size(ColoredHypergraph.build(4, [(0, 1, 2), (3,)])) == 3
    tri_pendant = ColoredHypergraph.graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert blue_degree(tri_pendant, 2, {3}) == 1
    sub, names = induced(C4, {0, 1, 2})
    assert names == [0, 1, 2]
    assert sub == PATH3


def test_hyperedges_are_a_set():
    x = ColoredHypergraph.build(3, [(0, 1), (1, 0), (0, 1, 2)])
    assert x.hyperedges == [(0, 1), (0, 1, 2)]


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=2, hyperedges=[(0, 2)]),
        dict(n=2, hyperedges=[(0, 0)]),
        dict(n=2, colors=[0]),
        dict(n=2, colors=[0, -1]),
        dict(n=2, directed=[(0, 1)]),
        dict(n=-1),
    ],
)
def test_build_rejects_bad_input(kwargs):
    with pytest.raises(InstanceError):
        ColoredHypergraph.build(**kwargs)


def test_json_round_trip():
    x = ColoredHypergraph.build(5, [(0, 1, 2), (3, 4)], [0, 0, 1, 1, 2], [(0, 1, 3)])
    assert ColoredHypergraph.from_json(x.to_json()) == x


def test_color_classes():
    cc = ColorClasses.from_colors([1, 0, 1, 2, 1])
    assert cc.classes == (frozenset({1}), frozenset({0, 2, 4}), frozenset({3}))
    assert cc.is_bounded(3) and not cc.is_bounded(2)
    assert cc.max_size() == 3
    assert cc.class_index()[4] == 1


@st.composite
def small_graphs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.integers(0, (1 << len(pairs)) - 1))
    cols = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return ColoredHypergraph.graph(n, [e for i, e in enumerate(pairs) if mask >> i & 1], cols)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_isomorphisms_compose(data):
    x = data.draw(small_graphs())
    p = data.draw(permutations(n=x.n))
    q = data.draw(permutations(n=x.n))
    y, z = x.relabel(p), x.relabel(p).relabel(q)
    assert is_isomorphism(p, x, y) and is_isomorphism(q, y, z)
    assert is_isomorphism(compose(p, q), x, z)


@settings(max_examples=40, deadline=None)
@given(small_graphs())
def test_automorphisms_form_a_group(x):
    aut = set(brute_automorphisms(x))
    assert Permutation.identity(x.n) in aut
    for a in aut:
        assert a.inverse() in aut
        for b in aut:
            assert compose(a, b) in aut
