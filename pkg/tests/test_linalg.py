import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mmdescend.exactnum import Field
from mmdescend.linalg import (
    DimensionError,
    ExactMat,
    SingularMatrixError,
    det,
    matconj,
    matinv,
    matmul,
    nullspace,
    random_invertible,
    random_matrix,
    rank,
    rank_over_base,
)

from oracles import from_sympy, mat_to_sympy, real_split_rank

I = Field(-1)
FIELDS = [Field(-1), Field(2), Field(161)]

seeds = st.integers(0, 2**32 - 1)
fields = st.sampled_from(FIELDS)


def test_identity_and_shape():
    A = ExactMat.identity(3, I)
    assert A.shape == (3, 3)
    assert A.is_identity() and A.is_square
    assert ExactMat.zeros(2, 3, I).is_zero()


def test_construct_from_strings_and_ints():
    A = ExactMat([["i", 0], [1, "1/2-i"]], I)
    assert A[0, 0] == I(0, 1)
    assert A[1, 1] == I(Fraction(1, 2), -1)
    assert A.to_strings() == [["i", "0"], ["1", "1/2-i"]]


def test_ragged_rows_rejected():
    with pytest.raises(DimensionError):
        ExactMat([[1, 2], [3]], I)


def test_matmul_shape_check():
    with pytest.raises(DimensionError):
        ExactMat.zeros(2, 3, I) @ ExactMat.zeros(2, 3, I)


def test_inverse_of_singular():
    A = ExactMat([[1, "i"], ["i", -1]], I)
    with pytest.raises(SingularMatrixError) as info:
        matinv(A)
    assert info.value.rank == 1 and info.value.size == 2


def test_det_and_inverse_example():
    A = ExactMat([[1, "i"], [0, 1]], I)
    assert det(A) == 1
    assert matinv(A) == ExactMat([[1, "-i"], [0, 1]], I)


def test_scalar_value():
    assert ExactMat.diag(["i", "i"], I).scalar_value() == I(0, 1)
    assert ExactMat.diag([1, 2], I).scalar_value() is None


def test_nullspace_example():
    A = ExactMat([[1, 1, 0], [0, 0, 1]], I)
    assert nullspace(A) == [(-I(1), I(1), I(0))]


def test_rank_over_base_examples():
    a = (I(1), I(0, 1))
    b = (I(0, 1), I(-1))  # i * a: dependent over Q[i], not over Q
    assert rank_over_base([a, b])[0] == 2
    c = (I(2), I(0, 2))
    n, chosen = rank_over_base([a, c, b])
    assert n == 2 and chosen == [a, b]
    assert rank_over_base([(I(0), I(0))]) == (0, [])


@settings(max_examples=40, deadline=None)
@given(seeds, fields, st.integers(1, 4))
def test_matmul_matches_sympy(seed, K, n):
    rng = random.Random(seed)
    A = random_matrix(n, n + 1, K, rng, 3)
    B = random_matrix(n + 1, 2, K, rng, 3)
    ref = sympy.expand(mat_to_sympy(A) * mat_to_sympy(B))
    got = matmul(A, B)
    for i in range(n):
        for j in range(2):
            assert got[i, j] == from_sympy(ref[i, j], K)


@settings(max_examples=40, deadline=None)
@given(seeds, fields, st.integers(1, 4))
def test_det_matches_sympy(seed, K, n):
    A = random_matrix(n, n, K, random.Random(seed), 3)
    assert det(A) == from_sympy(mat_to_sympy(A).det(method="berkowitz"), K)


@settings(max_examples=40, deadline=None)
@given(seeds, fields, st.integers(1, 5))
def test_inverse_property(seed, K, n):
    A = random_invertible(n, K, random.Random(seed), 4)
    Ainv = matinv(A)
    assert (A @ Ainv).is_identity()
    assert (Ainv @ A).is_identity()


@settings(max_examples=40, deadline=None)
@given(seeds, fields, st.integers(1, 4), st.integers(1, 5))
def test_rank_matches_sympy_and_nullity(seed, K, rows, cols):
    rng = random.Random(seed)
    # force rank deficiency half the time
    A = random_matrix(rows, cols, K, rng, 2)
    if rows > 1 and seed % 2:
        A = ExactMat([A.row(0)] + [A.row(0)] + [A.row(i) for i in range(2, rows)], K)
    r = rank(A)
    assert r == mat_to_sympy(A).rank(simplify=True)
    basis = nullspace(A)
    assert len(basis) == cols - r
    for v in basis:
        col = ExactMat([[x] for x in v], K)
        assert (A @ col).is_zero()


@settings(max_examples=40, deadline=None)
@given(seeds, fields, st.integers(1, 4))
def test_conj_multiplicative(seed, K, n):
    rng = random.Random(seed)
    A = random_matrix(n, n, K, rng, 3)
    B = random_matrix(n, n, K, rng, 3)
    assert matconj(A @ B) == matconj(A) @ matconj(B)
    assert matconj(matconj(A)) == A


@settings(max_examples=40, deadline=None)
@given(seeds, fields, st.integers(1, 6), st.integers(1, 3))
def test_rank_over_base_matches_split_rank(seed, K, count, n):
    rng = random.Random(seed)
    vs = [random_matrix(1, n, K, rng, 2).row(0) for _ in range(count)]
    if count > 1:
        vs.append(tuple(x * K(0, 1) for x in vs[0]))
    r, chosen = rank_over_base(vs)
    assert r == real_split_rank(vs)
    assert real_split_rank(chosen) == r
    assert all(v in vs for v in chosen)
