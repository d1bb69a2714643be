from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from matchscheme.combinatorics import double_factorial, hyperoctahedral_order, partitions_of
from matchscheme.ekr import pair_counts, trivial_family
from matchscheme.scheme import associate_matrix, sphere_size
from matchscheme.spectrum import (
    LabelingError,
    character_table,
    idempotent_suite_check,
    idempotents,
    inequality_chain_check,
    joint_eigenvalues,
    label_collisions,
    label_columns,
    orthogonality_check,
    standard_least_eigenvalue_check,
    thrall_check,
    zonal_closed_form_check,
    zonal_n_sphere,
    zonal_table,
)


def alternating_column(mu, n):
    """omega_(1^n) on the mu-sphere: the sign-like spherical function, (-1)^(n-l) 2^(l-n)."""
    return Fraction((-1) ** (n - len(mu))) * Fraction(2) ** (len(mu) - n)


def test_table_example_n3():
    t = character_table(3)
    assert t.eigenvalue((3,), (2, 1)) == -2
    assert t.P[-1] == (1, 1, 1)


@pytest.mark.parametrize("n", range(1, 8))
def test_identity_row_and_trivial_column(n):
    t = character_table(n)
    assert all(v == 1 for v in t.P[-1])
    assert t.degrees == [sphere_size(lam, n) for lam in t.partitions]
    assert sum(t.multiplicities) == double_factorial(2 * n - 1)


def test_multiplicities_n4():
    assert sum(character_table(4).multiplicities) == 105


def test_labelling_examples():
    assert character_table(4).eigenvalue((4,), (3, 1)) == -8
    t5 = character_table(5)
    gamma = sum(t5.eigenvalue(mu, (4, 1)) for mu in partitions_of(5) if 1 not in mu)
    assert gamma == -68


@pytest.mark.parametrize("n", range(1, 8))
def test_no_label_collisions(n):
    assert label_collisions(n) == []


def test_labelling_rejects_bad_columns():
    cols = joint_eigenvalues(4)
    with pytest.raises(LabelingError):
        label_columns(4, cols[:-1])
    with pytest.raises(LabelingError):
        label_columns(4, [cols[0]] + cols[:-1])


@pytest.mark.parametrize("n", range(1, 8))
def test_alternating_column_matches_independent_closed_form(n):
    z = zonal_table(n)
    for mu in z.partitions:
        assert z.value((1,) * n, mu) == alternating_column(mu, n)


def test_dense_eigenvalues_n4_every_relation():
    t = character_table(4)
    for mu in t.partitions:
        A = associate_matrix(4, mu).astype(float)
        got = np.rint(np.linalg.eigvalsh(A)).astype(int)
        want = [v for v, m in zip(t.P[t.partitions.index(mu)], t.multiplicities) for _ in range(m)]
        assert Counter(got.tolist()) == Counter(want)


@pytest.mark.parametrize("n", range(1, 8))
def test_orthogonality(n):
    assert orthogonality_check(n).passed


@pytest.mark.parametrize("n", range(1, 8))
def test_thrall(n):
    assert thrall_check(n).passed


def test_zonal_examples():
    assert zonal_n_sphere((5, 2, 1)) == Fraction(1, 840)
    for n in range(2, 12):
        assert zonal_n_sphere((n - 1, 1)) == Fraction(-1, 2 * (n - 1))
        assert zonal_n_sphere((n,)) == 1
    assert zonal_n_sphere((2, 2, 2)) == 0
    z5 = zonal_table(5)
    assert all(z5.value(lam, (1,) * 5) == 1 for lam in partitions_of(5))
    assert zonal_table(4).value((3, 1), (4,)) == Fraction(-1, 6)
    assert all(z5.value((5,), mu) == 1 for mu in partitions_of(5))


def test_zonal_closed_form_by_hand_n8():
    # cells (i, j), 0-based, excluding the corner: value 2j - i
    lam = (5, 2, 1)
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            if (i, j) != (0, 0):
                prod *= 2 * j - i
    assert Fraction(prod, hyperoctahedral_order(7)) == zonal_n_sphere(lam)


@pytest.mark.parametrize("n", range(1, 8))
def test_zonal_closed_form_rows(n):
    assert zonal_closed_form_check(n).passed


@pytest.mark.parametrize("n", range(1, 5))
def test_dense_idempotents(n):
    rep = idempotent_suite_check(n)
    assert rep.passed, rep.witnesses


def test_idempotent_quadratic_form_matches_dense():
    bundle = idempotents(4)
    fam = trivial_family(4, 1, 2)
    v = fam.to_array()
    counts = pair_counts(4, fam.ranks())
    for lam in bundle.partitions:
        dense = bundle.dense(lam).apply(v)
        assert sum(a * b for a, b in zip(v, dense)) == bundle.quadratic_form(lam, counts)


@pytest.mark.parametrize("n", range(2, 8))
def test_standard_is_least_for_cycle_relation(n):
    assert standard_least_eigenvalue_check(n).passed


@pytest.mark.parametrize("n", [2, 4, 5, 6, 7])
def test_inequality_chain_holds(n):
    assert inequality_chain_check(n).passed


def test_inequality_chain_ties_at_n3():
    # |omega_(2,1)| = |omega_(1,1,1)| = 1/4 on the 3-sphere, so the strict chain fails
    rep = inequality_chain_check(3)
    assert rep.status == "fail"
    assert abs(zonal_n_sphere((2, 1))) == abs(zonal_n_sphere((1, 1, 1))) == Fraction(1, 4)
