import random
from fractions import Fraction

import pytest

from supervec.errors import NotInvertible
from supervec.linalg import (
    determinant,
    invert_matrix,
    kernel_basis,
    mat_vec,
    rank,
    rref,
    solve_columns,
)
from supervec.scalars import GR_ONE, GR_ZERO, GaussianRational, Polynomial, RationalFunction


def g(x):
    return GaussianRational(Fraction(x))


def test_kernel_identity_is_empty():
    m = [[g(1), g(0), g(0)], [g(0), g(1), g(0)], [g(0), g(0), g(1)]]
    assert kernel_basis(m, 3) == []


def test_kernel_zero_matrix_is_standard_basis():
    m = [[g(0)] * 4, [g(0)] * 4]
    basis = kernel_basis(m, 4)
    assert len(basis) == 4
    for j, vec in enumerate(basis):
        assert vec[j] == GR_ONE
        assert sum(1 for c in vec if c) == 1


def test_kernel_small_example():
    m = [[g(1), g(1), g(0)], [g(0), g(0), g(1)]]
    basis = kernel_basis(m, 3)
    assert len(basis) == 1
    assert basis[0] == [g(-1), g(1), g(0)]


def rand_matrix(rng, rows, cols):
    return [
        [GaussianRational(Fraction(rng.randint(-4, 4), rng.randint(1, 3))) for _ in range(cols)]
        for _ in range(rows)
    ]


def test_kernel_vectors_annihilate_and_count_matches_rank():
    rng = random.Random(5)
    for _ in range(40):
        rows, cols = rng.randint(1, 5), rng.randint(1, 6)
        m = rand_matrix(rng, rows, cols)
        basis = kernel_basis(m, cols)
        for vec in basis:
            assert all(not c for c in mat_vec(m, vec, GR_ZERO))
        # independent elimination order: reverse the columns
        reversed_m = [list(reversed(row)) for row in m]
        assert len(basis) == cols - rank(reversed_m)


def test_kernel_ordering_by_free_column():
    # columns 1 and 3 are free; basis vectors must come in that order
    m = [[g(1), g(2), g(0), g(1)], [g(0), g(0), g(1), g(1)]]
    basis = kernel_basis(m, 4)
    assert len(basis) == 2
    assert basis[0][1] == GR_ONE and basis[1][3] == GR_ONE


def test_rref_is_idempotent():
    rng = random.Random(6)
    for _ in range(20):
        m = rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 5))
        reduced, pivots = rref(m)
        again, pivots2 = rref(reduced)
        assert reduced == again and pivots == pivots2


def test_solve_columns_exact_and_inconsistent():
    m = [[g(1), g(0)], [g(1), g(1)], [g(0), g(2)]]
    good = [g(1), g(3), g(4)]  # x = (1, 2)
    bad = [g(0), g(0), g(1)]
    sols = solve_columns(m, [good, bad])
    assert sols[0] == [g(1), g(2)]
    assert sols[1] is None


def test_invert_matrix_over_rational_functions():
    z = RationalFunction.z()
    one = RationalFunction.one()
    m = [[z, one], [one, z]]
    inv = invert_matrix(m, RationalFunction.zero(), one)
    prod = [
        [sum((m[i][k] * inv[k][j] for k in range(2)), RationalFunction.zero()) for j in range(2)]
        for i in range(2)
    ]
    assert prod == [[one, RationalFunction.zero()], [RationalFunction.zero(), one]]
    with pytest.raises(NotInvertible):
        invert_matrix([[one, one], [one, one]], RationalFunction.zero(), one)


def test_determinant():
    z = RationalFunction.z()
    one = RationalFunction.one()
    assert determinant([[z, one], [one, z]], RationalFunction.zero(), one) == z * z - one
    assert not determinant([[one, one], [one, one]], RationalFunction.zero(), one)
