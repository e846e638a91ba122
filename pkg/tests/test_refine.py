import corpus
from fptiso.hypergraph import ColoredHypergraph
from fptiso.oracle import brute_automorphisms
from fptiso.refine import cells, refine, refine_jointly


def partition(coloring):
    return sorted(sorted(c) for c in cells(coloring).values())


def test_examples():
    path3 = ColoredHypergraph.graph(3, [(0, 1), (1, 2)])
    assert partition(refine(path3)) == [[0, 2], [1]]
    c4 = ColoredHypergraph.graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert partition(refine(c4)) == [[0, 1, 2, 3]]
    star = ColoredHypergraph.graph(4, [(0, 1), (0, 2), (0, 3)])
    assert partition(refine(star)) == [[0], [1, 2, 3]]


def test_hyperedges_and_arcs_split_cells():
    x = ColoredHypergraph.build(4, [(0, 1, 2)])
    assert partition(refine(x)) == [[0, 1, 2], [3]]
    d = ColoredHypergraph.build(3, [], None, [(0, 1, 0)])
    assert partition(refine(d)) == [[0], [1], [2]]


def test_start_coloring_is_refined_not_replaced():
    c4 = ColoredHypergraph.graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert partition(refine(c4, [1, 0, 0, 0])) == [[0], [1, 3], [2]]


def test_joint_ids_are_label_independent():
    rng = corpus.seeded(11)
    for _ in range(100):
        n = rng.randint(1, 8)
        x = corpus.hypergraph(rng, n, 3)
        p = corpus.shuffled(rng, n)
        y = x.relabel(p)
        cx, cy = refine_jointly([x, y])
        assert all(cx[v] == cy[p.images[v]] for v in range(n))


def test_stable_and_aut_invariant():
    rng = corpus.seeded(12)
    for _ in range(80):
        n = rng.randint(1, 7)
        x = corpus.symmetric_hypergraph(rng, n, rng.choice([2, 3]))
        col = refine(x)
        assert partition(refine(x, col)) == partition(col)
        for a in brute_automorphisms(x):
            assert all(col[v] == col[a.images[v]] for v in range(n))
