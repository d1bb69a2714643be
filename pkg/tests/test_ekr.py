from itertools import combinations

import numpy as np
import pytest

from matchscheme.combinatorics import double_factorial, partitions_of
from matchscheme.derangement import derangement_union, single_associate
from matchscheme.ekr import (
    FamilyVector,
    arithmetic_checks,
    chromatic_coloring,
    clique_coclique_check,
    clique_coclique_dense,
    extremal_uniqueness_check,
    independence_of_trivial_families,
    lucas_clique,
    max_independent_set,
    maximum_independent_sets,
    module_method_check,
    pair_counts,
    t_intersecting_check,
    t_intersecting_search,
    trivial_families,
    trivial_family,
)
from matchscheme.matchings import Matching, cycle_type, identity_matching, matching_array

# a hand-drawn one-factorisation of K_8, seven factors
KNOWN_FACTORISATION = [
    [(1, 2), (8, 3), (7, 4), (6, 5)],
    [(1, 3), (2, 4), (8, 5), (7, 6)],
    [(1, 4), (3, 5), (2, 6), (7, 8)],
    [(1, 5), (4, 6), (3, 7), (2, 8)],
    [(1, 6), (5, 7), (8, 4), (2, 3)],
    [(1, 7), (6, 8), (5, 2), (3, 4)],
    [(1, 8), (7, 2), (6, 3), (4, 5)],
]


def brute_alpha(adj):
    """Independence number by plain subset enumeration (tiny graphs only)."""
    N = adj.shape[0]
    best = 0
    for mask in range(1 << N):
        members = [v for v in range(N) if mask >> v & 1]
        if len(members) > best and not adj[np.ix_(members, members)].any():
            best = len(members)
    return best


def test_trivial_family_examples():
    assert len(trivial_family(4, 1, 2)) == 15
    fam = trivial_family(2, 1, 3)
    assert [str(m) for m in fam.matchings()] == ["1-3|2-4"]
    with pytest.raises(ValueError):
        trivial_family(3, 1, 1)


@pytest.mark.parametrize("n", range(2, 6))
def test_each_matching_in_n_trivial_families(n):
    cover = sum(f.to_array() for f in trivial_families(n).values())
    assert (cover == n).all()


def test_family_vector_roundtrip():
    fam = FamilyVector.from_ranks(4, [0, 17, 104])
    assert fam.ranks() == [0, 17, 104]
    assert fam.cardinality == 3
    assert fam.to_array().sum() == 3
    with pytest.raises(ValueError):
        FamilyVector.from_ranks(3, [15])


def test_known_factorisation_is_lucas():
    ms = [Matching.from_pairs(p) for p in KNOWN_FACTORISATION]
    edges = set().union(*(m.edges() for m in ms))
    assert len(edges) == 28
    assert all(cycle_type(a, b) == (4,) for a, b in combinations(ms, 2))


@pytest.mark.parametrize("n", range(2, 8))
def test_lucas_clique(n):
    c = lucas_clique(n)
    assert len(c.matchings) == 2 * n - 1
    assert c.verify()
    assert identity_matching(n) in c.matchings
    edges = set().union(*(m.edges() for m in c.matchings))
    assert len(edges) == n * (2 * n - 1)


def test_lucas_clique_methods():
    assert lucas_clique(4).method == "starter"
    c5 = lucas_clique(5, seed=3)
    assert c5.method == "search" and c5.seed == 3 and c5.verify()
    assert lucas_clique(5, seed=3) == c5  # seeded search is reproducible


def test_clique_coclique_arithmetic():
    assert 7 * 15 == double_factorial(7)
    assert arithmetic_checks(12).passed


@pytest.mark.parametrize("n", range(2, 8))
def test_clique_coclique(n):
    assert clique_coclique_check(n).passed


def test_clique_coclique_dense_n4():
    q = clique_coclique_dense(4)
    xEx, yEy = q[(3, 1)]
    assert xEx == 0 and yEy != 0
    for lam, (a, b) in q.items():
        if lam != (4,):
            assert a * b == 0


def test_clique_coclique_dense_n3_all_zero():
    q = clique_coclique_dense(3)
    assert all(a * b == 0 for lam, (a, b) in q.items() if lam != (3,))


def test_dense_and_coefficient_quadratic_forms_agree_n5():
    from matchscheme.ekr import _quadratic_forms

    dense = clique_coclique_dense(5)
    y = trivial_family(5, 1, 2)
    coef = _quadratic_forms(5, pair_counts(5, y.ranks()))
    assert {lam: v[1] for lam, v in dense.items()} == coef


def test_pair_count_shortcut_exact_for_trivial_family():
    ranks = trivial_family(5, 1, 2).ranks()
    assert np.array_equal(pair_counts(5, ranks), pair_counts(5, ranks, all_pairs=False))


@pytest.mark.parametrize("n", range(2, 8))
def test_module_method(n):
    rep = module_method_check(n)
    assert rep.passed, rep.witnesses


def test_module_method_dense_example():
    from matchscheme.spectrum import idempotents

    E = idempotents(4).dense((2, 2))
    assert not any(E.apply(trivial_family(4, 1, 2).to_array()))


def test_module_method_coefficient_mode_small_n():
    assert module_method_check(4, dense=False).passed


def test_clause_b_values_n6():
    from matchscheme.spectrum import zonal_n_sphere

    others = [lam for lam in partitions_of(6) if lam not in ((6,), (5, 1))]
    assert len(others) == 9
    assert all(1 + 10 * zonal_n_sphere(lam) != 0 for lam in others)


@pytest.mark.parametrize("n", range(2, 7))
def test_trivial_families_independent(n):
    assert independence_of_trivial_families(n).passed


def test_branch_and_bound_against_brute_force():
    rng = np.random.default_rng(0)
    for _ in range(15):
        N = int(rng.integers(4, 13))
        adj = np.triu(rng.random((N, N)) < 0.35, 1)
        adj = adj | adj.T
        conflict = [sum(1 << int(y) for y in np.flatnonzero(row)) for row in adj]
        size, sets, complete, _ = maximum_independent_sets(conflict, N, enumerate_all=True)
        assert complete and size == brute_alpha(adj)
        for s in sets:
            members = [v for v in range(N) if s >> v & 1]
            assert len(members) == size and not adj[np.ix_(members, members)].any()


@pytest.mark.parametrize("graph", ["gamma", "n"])
@pytest.mark.parametrize("n,families", [(3, 15), (4, 28)])
def test_extremal_uniqueness(n, graph, families):
    rep = extremal_uniqueness_check(n, graph)
    assert rep.passed
    assert rep.actual == {"alpha": double_factorial(2 * n - 3), "families": families}


def test_max_independent_set_modes():
    u = derangement_union(4)
    assert max_independent_set(u, "bound").size == 15
    exact = max_independent_set(u, "exact")
    assert exact.complete and exact.size == 15
    assert max_independent_set(single_associate(4), "exact").size == 15
    with pytest.raises(ValueError):
        max_independent_set(derangement_union(6), "exact")
    with pytest.raises(ValueError):
        max_independent_set(u, "greedy")


def test_budget_exhaustion_is_inconclusive():
    rep = extremal_uniqueness_check(4, "gamma", budget=10)
    assert rep.status == "inconclusive"


@pytest.mark.slow
def test_extremal_uniqueness_n5():
    assert extremal_uniqueness_check(5, "gamma").passed


def test_exact_alpha_n5():
    res = max_independent_set(derangement_union(5), "exact")
    assert res.complete and res.size == 105


@pytest.mark.parametrize("n", range(2, 7))
def test_chromatic(n):
    colours, rep = chromatic_coloring(n)
    assert rep.passed
    assert set(colours.tolist()) == set(range(2, 2 * n + 1))


def test_chromatic_class_sizes_n4():
    colours, rep = chromatic_coloring(4)
    assert rep.details["class_sizes"] == [15] * 7
    # colour = partner of vertex 1
    assert (colours == matching_array(4)[:, 0] + 1).all()


@pytest.mark.parametrize("n,t,size", [(3, 1, 3), (3, 2, 1), (4, 1, 15), (4, 2, 3), (4, 3, 1)])
def test_t_intersecting(n, t, size):
    rep = t_intersecting_check(n, t)
    assert rep.passed
    assert t_intersecting_search(n, t).size == size


def test_t_intersecting_limits():
    with pytest.raises(ValueError):
        t_intersecting_search(5, 2)
    with pytest.raises(ValueError):
        t_intersecting_search(4, 4)
