"""Exact linear algebra: ranks, subspace lattice identities, canonicity."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from covex.errors import FieldError, SingularMatrixError
from covex.exactla import (
    ExactMatrix,
    FieldSpec,
    Subspace,
    coordinate_subspace,
    dim_quotient,
    image,
    kernel,
    random_borel,
    random_matrix,
    rank,
    solve_linear,
    standard_subspace,
    subspace_intersect,
    subspace_sum,
)

F = FieldSpec.prime()
Q = FieldSpec.rational()


def test_field_parsing():
    assert FieldSpec.parse("Q") == Q
    assert FieldSpec.parse("p:10007") == F
    with pytest.raises(FieldError):
        FieldSpec.parse("p:10008")
    with pytest.raises(FieldError):
        FieldSpec.parse("float")


def test_rank_trivia():
    assert rank(ExactMatrix.zeros(F, 3, 5)) == 0
    assert rank(ExactMatrix.identity(F, 4)) == 4
    assert rank(ExactMatrix.identity(Q, 4)) == 4


def test_rank_of_conormal_block_example():
    # the 4x4 matrix ((yx, y), (xyx, xy)) at x = I, y = E_12: all blocks E_12
    e12 = [[0, 1], [0, 0]]
    m = ExactMatrix.from_rows(
        F, [row + row for row in e12] + [row + row for row in e12]
    )
    assert rank(m) == 1


def _random_mat(rng, rows, cols):
    return random_matrix(F, rows, cols, rng)


def test_rank_invariances():
    rng = random.Random(5)
    for _ in range(40):
        a = _random_mat(rng, rng.randrange(1, 6), rng.randrange(1, 6))
        assert rank(a) == rank(a.transpose())
        rows = list(range(1, a.rows + 1))
        cols = list(range(1, a.cols + 1))
        rng.shuffle(rows)
        rng.shuffle(cols)
        assert rank(a.submatrix(rows, cols)) == rank(a)


def test_dim_quotient_fixtures():
    v = coordinate_subspace(F, 2, [1])
    w = coordinate_subspace(F, 2, [2])
    assert dim_quotient(v, w) == 1
    big = standard_subspace(F, 4, 3)
    small = standard_subspace(F, 4, 2)
    assert dim_quotient(small, big) == 0
    # w E_2 / E_2 for w = [2143] has dimension 0
    e2 = standard_subspace(F, 4, 2)
    w_e2 = Subspace.span(F, 4, [(0, 1, 0, 0), (1, 0, 0, 0)])
    assert dim_quotient(w_e2, e2) == 0


def test_subspace_trivia():
    v = Subspace.span(F, 3, [(1, 2, 3)])
    assert subspace_sum(v, Subspace.zero(F, 3)) == v
    assert subspace_intersect(standard_subspace(F, 5, 3), standard_subspace(F, 5, 2)) == standard_subspace(F, 5, 2)
    a = ExactMatrix.from_rows(F, [[7]])
    assert kernel(a).dim == 0
    assert image(a).dim == 1


def test_subspace_canonicity():
    rng = random.Random(11)
    for _ in range(30):
        dim = rng.randrange(1, 4)
        vecs = [[rng.randrange(F.p) for _ in range(5)] for _ in range(dim)]
        v = Subspace.span(F, 5, vecs)
        # mix the generators by random invertible combinations
        mixer = random_borel(F, v.dim, rng)
        mixed = (v.basis_matrix() @ mixer).transpose().entries
        assert Subspace.span(F, 5, mixed) == v


def test_dimension_identity():
    rng = random.Random(17)
    for _ in range(50):
        v = Subspace.span(F, 6, [[rng.randrange(F.p) for _ in range(6)] for _ in range(rng.randrange(4))])
        w = Subspace.span(F, 6, [[rng.randrange(F.p) for _ in range(6)] for _ in range(rng.randrange(4))])
        assert subspace_sum(v, w).dim + subspace_intersect(v, w).dim == v.dim + w.dim


def test_rank_kernel_dimension():
    rng = random.Random(23)
    for _ in range(30):
        a = _random_mat(rng, rng.randrange(1, 6), rng.randrange(1, 6))
        assert rank(a) + kernel(a).dim == a.cols
        assert image(a).dim == rank(a)


def test_generic_invertibility_frequency():
    rng = random.Random(404)
    trials = 1000
    invertible = sum(
        1 for _ in range(trials) if rank(random_matrix(F, 8, 8, rng)) == 8
    )
    assert invertible / trials >= 0.99


def test_random_borel_properties():
    rng = random.Random(31)
    for n in (1, 3, 5):
        b = random_borel(F, n, rng)
        assert rank(b) == n
        for i in range(1, n + 1):
            for j in range(1, i):
                assert b.entry(i, j) == 0
        c = random_borel(F, n, rng)
        prod = b @ c
        for i in range(1, n + 1):
            for j in range(1, i):
                assert prod.entry(i, j) == 0
    # determinism under a fixed seed
    assert random_borel(F, 4, random.Random(9)) == random_borel(F, 4, random.Random(9))


def test_sampling_requires_prime_field():
    rng = random.Random(0)
    with pytest.raises(FieldError):
        random_matrix(Q, 2, 2, rng)
    with pytest.raises(FieldError):
        random_borel(Q, 2, rng)


def test_solve_linear():
    a = ExactMatrix.from_rows(Q, [[1, 2], [2, 4]])
    consistent = solve_linear(a, [1, 2])
    assert consistent.consistent
    x = consistent.particular
    assert a @ ExactMatrix.from_rows(Q, [[x[0]], [x[1]]]) == ExactMatrix.from_rows(Q, [[1], [2]])
    assert consistent.homogeneous.dim == 1
    inconsistent = solve_linear(a, [1, 3])
    assert not inconsistent.consistent


def test_rational_exactness():
    a = ExactMatrix.from_rows(Q, [[Fraction(1, 3), 1], [1, Fraction(3, 7)]])
    inv = a.inverse()
    assert a @ inv == ExactMatrix.identity(Q, 2)
    with pytest.raises(SingularMatrixError):
        ExactMatrix.from_rows(Q, [[1, 2], [2, 4]]).inverse()


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_matmul_associativity(r, c, seed):
    rng = random.Random(seed)
    a = _random_mat(rng, r, c)
    b = _random_mat(rng, c, r)
    d = _random_mat(rng, r, c)
    assert (a @ b) @ d == a @ (b @ d)
