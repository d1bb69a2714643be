import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matchscheme.combinatorics import double_factorial, partitions_of
from matchscheme.matchings import (
    Matching,
    count_matchings,
    cycle_type,
    cycle_type_indices,
    enumerate_matchings,
    identity_matching,
    matching_array,
    rank,
    representative,
    sphere_labels,
    sphere_of,
    unrank,
)
from matchscheme.scheme import sphere_size


def brute_matchings(n):
    """All perfect matchings of [2n] as sorted pair lists, built from set partitions."""
    def rec(verts):
        if not verts:
            yield []
            return
        a = verts[0]
        for b in verts[1:]:
            rest = [v for v in verts if v not in (a, b)]
            for tail in rec(rest):
                yield [(a, b)] + tail
    return sorted(rec(list(range(1, 2 * n + 1))))


def brute_cycle_type(x, y):
    """Components of the union multigraph via union-find; part = component size / 2."""
    size = len(x.partner)
    parent = list(range(size))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for m in (x, y):
        for a, b in m.pairs(one_based=False):
            parent[find(a)] = find(b)
    comp = {}
    for v in range(size):
        comp[find(v)] = comp.get(find(v), 0) + 1
    return tuple(sorted((c // 2 for c in comp.values()), reverse=True))


matching_strategy = st.integers(1, 12).flatmap(
    lambda n: st.integers(0, count_matchings(n) - 1).map(lambda r: unrank(n, r))
)


def test_identity_matching():
    assert identity_matching(2).pairs() == [(1, 2), (3, 4)]
    assert identity_matching(1).pairs() == [(1, 2)]
    assert identity_matching(4).pairs() == [(1, 2), (3, 4), (5, 6), (7, 8)]


def test_enumeration_examples():
    ms = list(enumerate_matchings(3))
    assert len(ms) == 15
    assert ms[0].pairs() == [(1, 2), (3, 4), (5, 6)]
    assert ms[-1].pairs() == [(1, 6), (2, 5), (3, 4)]
    assert [m.pairs() for m in enumerate_matchings(1)] == [[(1, 2)]]
    assert sum(1 for _ in enumerate_matchings(5)) == 945


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_matches_brute_force(n):
    assert [m.pairs() for m in enumerate_matchings(n)] == brute_matchings(n)


def test_enumeration_window():
    full = list(enumerate_matchings(4))
    assert list(enumerate_matchings(4, 17, 60)) == full[17:60]


@pytest.mark.parametrize("n", range(1, 7))
def test_matching_array_agrees_with_enumeration(n):
    arr = matching_array(n)
    assert arr.shape == (count_matchings(n), 2 * n)
    assert not arr.flags.writeable
    for r in range(0, arr.shape[0], max(1, arr.shape[0] // 50)):
        assert tuple(int(v) for v in arr[r]) == unrank(n, r).partner
    # involution, no fixed point
    idx = np.arange(2 * n)
    assert (np.take_along_axis(arr, arr.astype(np.int64), axis=1) == idx).all()
    assert (arr != idx).all()


def test_rank_examples():
    for n in range(1, 8):
        assert rank(identity_matching(n)) == 0
    assert unrank(3, 14).pairs() == [(1, 6), (2, 5), (3, 4)]


def test_rank_roundtrip_exhaustive_n5():
    for r, m in enumerate(enumerate_matchings(5)):
        assert rank(m) == r
        assert unrank(5, r) == m


@given(matching_strategy)
def test_rank_unrank_roundtrip(m):
    assert unrank(m.n, rank(m)) == m


@given(matching_strategy)
def test_text_roundtrip(m):
    assert Matching.parse(str(m)) == m


def test_unrank_range():
    with pytest.raises(ValueError):
        unrank(3, 15)
    with pytest.raises(ValueError):
        unrank(3, -1)


@pytest.mark.parametrize("pairs", [[(1, 1)], [(1, 2), (2, 3)], [(1, 5), (2, 3)]])
def test_bad_pairs_rejected(pairs):
    with pytest.raises(ValueError):
        Matching.from_pairs(pairs)


def test_not_involution_rejected():
    with pytest.raises(ValueError):
        Matching((1, 2, 0, 3))


def test_cycle_type_worked_examples():
    e = identity_matching(4)
    assert cycle_type(Matching.from_pairs([(2, 3), (4, 5), (6, 7), (1, 8)]), e) == (4,)
    assert cycle_type(Matching.from_pairs([(1, 2), (3, 8), (4, 7), (5, 6)]), e) == (2, 1, 1)
    assert cycle_type(e, e) == (1, 1, 1, 1)


@given(matching_strategy, st.data())
def test_cycle_type_symmetric_and_matches_union_find(x, data):
    y = unrank(x.n, data.draw(st.integers(0, count_matchings(x.n) - 1)))
    assert cycle_type(x, y) == cycle_type(y, x) == brute_cycle_type(x, y)
    assert sum(cycle_type(x, y)) == x.n


@settings(max_examples=60)
@given(matching_strategy, st.data())
def test_cycle_type_relabelling_invariance(x, data):
    y = unrank(x.n, data.draw(st.integers(0, count_matchings(x.n) - 1)))
    sigma = data.draw(st.permutations(range(2 * x.n)))
    assert cycle_type(x.relabel(sigma), y.relabel(sigma)) == cycle_type(x, y)


@pytest.mark.parametrize("n", range(1, 6))
def test_vectorised_cycle_type_matches_scalar(n):
    arr = matching_array(n)
    parts = partitions_of(n)
    rng = np.random.default_rng(n)
    for y_rank in rng.choice(arr.shape[0], size=min(5, arr.shape[0]), replace=False):
        y = unrank(n, int(y_rank))
        idx = cycle_type_indices(arr, y)
        for r in range(arr.shape[0]):
            assert parts[idx[r]] == cycle_type(unrank(n, r), y)


def test_sphere_examples():
    assert sphere_of((1, 1, 1), 3) == [0]
    assert len(sphere_of((3,), 3)) == 8
    assert len(sphere_of((2, 1), 3)) == 6


@pytest.mark.parametrize("n", range(1, 8))
def test_spheres_partition_all_matchings(n):
    labels = sphere_labels(n)
    counts = np.bincount(labels, minlength=len(partitions_of(n)))
    assert counts.sum() == double_factorial(2 * n - 1)
    assert counts.tolist() == [sphere_size(lam, n) for lam in partitions_of(n)]


@pytest.mark.parametrize("n", range(1, 9))
def test_representative_has_its_cycle_type(n):
    e = identity_matching(n)
    for lam in partitions_of(n):
        assert cycle_type(representative(lam), e) == lam
