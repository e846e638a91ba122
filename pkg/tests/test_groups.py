import itertools

import pytest

from fptiso.groups import (
    AltStatus,
    BlockSystem,
    GeneratedGroup,
    GroupError,
    action_on_blocks,
    closure,
    contains,
    contains_alternating,
    group_order,
    is_primitive,
    matching_fixed_point,
    maximal_block_system,
    orbit_partition,
    orbits_linked,
    pointwise_stabilizer,
    primitive_giant_filter,
    restrict,
    setwise_stabilizer,
)
from fptiso.perm import Permutation

from corpus import random_group, two_orbit_groups


def G(n, *cycles):
    return GeneratedGroup(n, [Permutation.parse(c, n) for c in cycles])


def sets(*xs):
    return [set(x) for x in xs]


def test_orbit_partition_examples():
    assert sets(*orbit_partition(G(4, "(0 1 2 3)"))) == [{0, 1, 2, 3}]
    assert sets(*orbit_partition(G(4, "(0 1)", "(2 3)"))) == [{0, 1}, {2, 3}]
    g = G(6, "(0 1 2)(3 4 5)")
    assert sets(*orbit_partition(g)) == [{0, 1, 2}, {3, 4, 5}]
    assert len(closure(6, g.generators)) == 3


def test_order_and_membership_examples():
    assert group_order(G(3, "(0 1)", "(0 1 2)")) == 6
    assert not contains(G(3, "(0 1 2)"), Permutation.parse("(0 1)", 3))
    g = G(5, "(0 1)", "(0 1 2 3 4)")
    assert group_order(g) == 120 == len(closure(5, g.generators))


def test_stabilizer_examples():
    assert pointwise_stabilizer(G(3, "(0 1)", "(0 1 2)"), {0}).order() == 2
    c4 = G(4, "(0 1 2 3)")
    # only the even powers of the 4-cycle keep {0,2}
    expected = [x for x in closure(4, c4.generators) if {x(0), x(2)} == {0, 2}]
    assert len(expected) == 2
    assert setwise_stabilizer(c4, [{0, 2}]).order() == 2
    s4 = GeneratedGroup.symmetric(4)
    expected = [x for x in closure(4, s4.generators) if {x(0), x(1)} == {0, 1}]
    assert setwise_stabilizer(s4, [{0, 1}]).order() == len(expected) == 4
    assert pointwise_stabilizer(s4, []) is s4
    assert setwise_stabilizer(s4, []) is s4


def test_block_system_examples():
    c4 = G(4, "(0 1 2 3)")
    assert sets(*maximal_block_system(c4, range(4)).blocks) == [{0, 2}, {1, 3}]
    bs = maximal_block_system(GeneratedGroup.symmetric(4), range(4))
    assert sets(*bs.blocks) == [{0}, {1}, {2}, {3}]
    d4 = G(4, "(0 1)", "(2 3)", "(0 2)(1 3)")
    assert sets(*maximal_block_system(d4, range(4)).blocks) == [{0, 1}, {2, 3}]
    with pytest.raises(GroupError):
        maximal_block_system(c4, {0, 1})


def test_action_on_blocks_examples():
    c4 = G(4, "(0 1 2 3)")
    act, hom = action_on_blocks(c4, maximal_block_system(c4, range(4)))
    assert act.n == 2 and act.order() == 2
    assert hom(Permutation.parse("(0 2)(1 3)", 4)).is_identity()
    g = G(4, "(0 1)", "(2 3)")
    bs = BlockSystem(frozenset(range(4)), (frozenset({0, 1}), frozenset({2, 3})))
    assert action_on_blocks(g, bs)[0].order() == 1
    single = BlockSystem(frozenset(range(4)), tuple(frozenset([i]) for i in range(4)))
    assert action_on_blocks(c4, single)[0].order() == 4
    bad = BlockSystem(frozenset(range(4)), (frozenset({0, 1}), frozenset({2, 3})))
    with pytest.raises(GroupError):
        action_on_blocks(c4, bad)[1](Permutation.parse("(0 1 2 3)", 4))


def test_contains_alternating_examples():
    assert contains_alternating(G(5, "(0 1)", "(0 1 2 3 4)")) is AltStatus.IS_SYM
    assert contains_alternating(G(5, "(0 1 2)", "(2 3 4)")) is AltStatus.IS_ALT
    assert contains_alternating(G(5, "(0 1 2 3 4)")) is AltStatus.NEITHER
    with pytest.raises(GroupError):
        contains_alternating(G(4, "(0 1)"))


def test_primitive_giant_filter_examples():
    assert primitive_giant_filter(GeneratedGroup.alternating(7), 3)
    # degree 5 is far below 3^8 so the guard never fires
    assert primitive_giant_filter(G(5, "(0 1 2 3 4)"), 4)
    assert primitive_giant_filter(GeneratedGroup.symmetric(4), 2)
    # k=2: threshold 1, a cyclic group of prime degree is filtered out
    assert not primitive_giant_filter(G(5, "(0 1 2 3 4)"), 2)
    with pytest.raises(GroupError):
        primitive_giant_filter(G(4, "(0 1 2 3)"), 2)


def test_orbits_linked_examples():
    assert orbits_linked(G(6, "(0 1 2)(3 4 5)"), {0, 1, 2}, {3, 4, 5})
    assert not orbits_linked(G(6, "(0 1 2)", "(3 4 5)"), {0, 1, 2}, {3, 4, 5})
    assert not orbits_linked(G(3, "(0 1)"), {0, 1}, {2})
    with pytest.raises(GroupError):
        orbits_linked(G(3, "(0 1)"), {0, 1, 2}, {2})


def test_matching_fixed_point_examples():
    g = G(6, "(0 1)(3 4)", "(0 1 2)(3 4 5)")
    assert matching_fixed_point(g, {0, 1, 2}, {3, 4, 5}, 0) == 3
    assert matching_fixed_point(g, {0, 1, 2}, {3, 4, 5}, 2) == 5
    # linked through the relabelling 0->4, 1->3, 2->5
    anti = G(6, "(0 1)(3 4)", "(0 1 2)(4 3 5)")
    stabs = {
        v: sorted(x.images for x in closure(6, anti.generators) if x(v) == v)
        for v in range(6)
    }
    v = matching_fixed_point(anti, {0, 1, 2}, {3, 4, 5}, 0)
    assert [w for w in (3, 4, 5) if stabs[w] == stabs[0]] == [v] == [4]
    with pytest.raises(GroupError):
        matching_fixed_point(G(6, "(0 1 2)", "(3 4 5)"), {0, 1, 2}, {3, 4, 5}, 0)


def test_order_matches_closure_random(rng):
    checked = 0
    while checked < 300:
        n = rng.randint(1, 8)
        g = random_group(rng, n, rng.randint(0, 3))
        try:
            elems = closure(n, g.generators, limit=5000)
        except GroupError:
            continue
        assert g.order() == len(elems)
        assert set(g.elements()) == elems
        for x in itertools.islice(elems, 10):
            assert g.contains(x)
        checked += 1


def test_stabilizers_match_enumeration(rng):
    for _ in range(150):
        n = rng.randint(2, 7)
        g = random_group(rng, n, rng.randint(1, 2))
        elems = closure(n, g.generators)
        pts = rng.sample(range(n), rng.randint(1, n))
        pst = pointwise_stabilizer(g, pts)
        assert pst.order() == sum(all(x(p) == p for p in pts) for x in elems)
        fam = [frozenset(rng.sample(range(n), rng.randint(1, n - 1))) for _ in range(rng.randint(1, 3))]
        sst = setwise_stabilizer(g, fam)
        want = {x for x in elems if all(frozenset(map(x, s)) == s for s in fam)}
        assert sst.order() == len(want)
        assert all(h in want for h in sst.generators)


def test_block_systems_are_valid_and_primitive(rng):
    for _ in range(150):
        n = rng.randint(2, 8)
        g = random_group(rng, n, rng.randint(1, 2))
        elems = closure(n, g.generators)
        for orbit in g.orbits():
            bs = maximal_block_system(g, orbit)
            cells = set(bs.blocks)
            assert len({len(b) for b in cells}) == 1
            assert frozenset().union(*cells) == orbit
            for x in elems:
                assert all(frozenset(map(x, b)) in cells for b in cells)
            act, _ = action_on_blocks(g, bs)
            assert is_primitive(act, range(act.n))


def test_bigger_orbit_survives_pointwise_stabilizer(rng):
    checked = 0
    for g, o1, o2 in two_orbit_groups(rng, 400):
        if len(o1) < max(5, len(o2) + 1):
            continue
        if set(g.orbits()) != {o1, o2} and o2 not in g.orbits():
            continue
        r1, _ = restrict(g, sorted(o1))
        if contains_alternating(r1) is AltStatus.NEITHER:
            continue
        stab = pointwise_stabilizer(g, o2)
        on1, _ = restrict(stab, sorted(o1))
        alt1 = GeneratedGroup.alternating(len(o1))
        assert all(on1.contains(x) for x in alt1.generators)
        checked += 1
    assert checked >= 200


def test_linked_or_alternating_product(rng):
    checked = 0
    for g, o1, o2 in two_orbit_groups(rng, 600):
        if len(o2) < 5 or o1 not in g.orbits() or o2 not in g.orbits():
            continue
        r1, _ = restrict(g, sorted(o1))
        r2, _ = restrict(g, sorted(o2))
        if AltStatus.NEITHER in (contains_alternating(r1), contains_alternating(r2)):
            continue
        if not orbits_linked(g, o1, o2):
            prod = GeneratedGroup.alternating(g.n, sorted(o1)).generators + GeneratedGroup.alternating(
                g.n, sorted(o2)
            ).generators
            assert all(g.contains(x) for x in prod)
        checked += 1
    assert checked >= 200


def test_chain_dump_mentions_order():
    assert "order 6" in G(3, "(0 1)", "(0 1 2)").dump()
