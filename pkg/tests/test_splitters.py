import itertools

import pytest

from fptiso import splitters


def test_examples():
    fam = splitters.build(4, 4)
    assert len(fam) == 1 and sorted(fam.functions[0]) == [0, 1, 2, 3]
    fam = splitters.build(4, 2)
    assert fam.is_perfect()
    assert len(fam) <= 3
    assert all(fam.splits(pair) for pair in itertools.combinations(range(4), 2))
    assert splitters.build(1, 1).functions == ((0,),)


def test_rejects_bad_range():
    with pytest.raises(ValueError):
        splitters.build(3, 4)
    with pytest.raises(ValueError):
        splitters.build(3, 0)


def _perfect_by_enumeration(fam):
    return all(
        any(len({h[v] for v in sub}) == len(sub) for h in fam)
        for r in range(1, fam.k + 1)
        for sub in itertools.combinations(range(fam.n), r)
    )


@pytest.mark.parametrize("n", range(1, 13))
def test_perfect_for_small_domains(n):
    for k in range(1, min(4, n) + 1):
        fam = splitters.build(n, k)
        assert all(len(h) == n and set(h) <= set(range(k)) for h in fam)
        assert _perfect_by_enumeration(fam)


def test_vectorized_check_agrees_up_to_16():
    for n in (13, 16):
        for k in range(1, 5):
            assert splitters.build(n, k).is_perfect()


def test_deterministic_and_within_bound():
    assert splitters.build(20, 4, seed=3) == splitters.build(20, 4, seed=3)
    for n, k in [(10, 3), (20, 4), (40, 4)]:
        assert len(splitters.build(n, k)) <= splitters.size_bound(n, k)
