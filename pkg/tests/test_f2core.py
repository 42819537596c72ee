import random

import pytest

from kervaire.f2core import (
    BitMatrix,
    BitVector,
    DimensionError,
    complement_basis,
    kernel_basis,
    rank,
    solve,
    span_reduce,
)


def random_matrix(rng, r, c):
    return BitMatrix.from_lists([[rng.randint(0, 1) for _ in range(c)] for _ in range(r)], c)


def brute_kernel_size(M):
    return sum(1 for k in range(1 << M.cols) if M.apply(BitVector(M.cols, k)).is_zero())


def brute_image_size(M):
    return len({M.apply(BitVector(M.cols, k)).bits for k in range(1 << M.cols)})


def test_vector_basics():
    v = BitVector.from_list([1, 0, 1, 1])
    assert v.support() == [0, 2, 3]
    assert v.weight() == 3
    assert (v + v).is_zero()
    assert v.dot(BitVector.from_list([1, 1, 1, 0])) == 0
    assert v.concat(BitVector.unit(2, 1)).to_list() == [1, 0, 1, 1, 0, 1]
    assert v.slice(1, 3).to_list() == [0, 1]
    with pytest.raises(IndexError):
        v[4]
    with pytest.raises(DimensionError):
        v + BitVector.zeros(3)


def test_rank_and_kernel_against_enumeration():
    rng = random.Random(11)
    for _ in range(60):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        M = random_matrix(rng, r, c)
        ker = kernel_basis(M)
        assert 2 ** len(ker) == brute_kernel_size(M)
        assert 2 ** rank(M) == brute_image_size(M)
        assert rank(M) + len(ker) == c
        for v in ker:
            assert M.apply(v).is_zero()


def test_solve_matches_enumeration():
    rng = random.Random(5)
    for _ in range(60):
        M = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        b = BitVector(M.rows, rng.getrandbits(M.rows))
        x = solve(M, b)
        reachable = any(M.apply(BitVector(M.cols, k)) == b for k in range(1 << M.cols))
        assert (x is not None) == reachable
        if x is not None:
            assert M.apply(x) == b
    with pytest.raises(DimensionError):
        solve(BitMatrix.identity(3), BitVector.zeros(2))


def test_inverse_and_products():
    rng = random.Random(2)
    found = 0
    while found < 20:
        M = random_matrix(rng, 5, 5)
        if not M.is_invertible():
            with pytest.raises(ValueError):
                M.inverse()
            continue
        found += 1
        assert M @ M.inverse() == BitMatrix.identity(5)
        assert (M.T).T == M
        assert M.power(3) == M @ M @ M


def test_permutation_matrix_sends_basis_vectors():
    P = BitMatrix.permutation([2, 0, 1])
    assert P.apply(BitVector.unit(3, 0)) == BitVector.unit(3, 2)
    assert P.apply(BitVector.unit(3, 1)) == BitVector.unit(3, 0)


def test_stacking_and_bilinear():
    A = BitMatrix.identity(2)
    B = BitMatrix.from_lists([[0, 1], [1, 0]])
    D = BitMatrix.block_diag([A, B])
    assert D.shape == (4, 4)
    assert BitMatrix.hstack([A, B]).shape == (2, 4)
    assert BitMatrix.vstack([A, B]).shape == (4, 2)
    assert B.bilinear(BitVector.unit(2, 0), BitVector.unit(2, 1)) == 1
    assert B.is_symmetric() and B.diagonal().is_zero()


def test_complement_and_reduce():
    space = [BitVector.unit(4, i) for i in range(4)]
    sub = [BitVector.from_list([1, 1, 0, 0]), BitVector.from_list([0, 0, 1, 1])]
    comp = complement_basis(sub, space)
    assert len(comp) == 2
    assert rank(BitMatrix.from_columns(sub + comp, 4)) == 4
    v = BitVector.from_list([1, 1, 1, 1])
    assert span_reduce(sub, v).is_zero()
    # reduction is canonical: equal modulo the span gives equal results
    w = BitVector.from_list([1, 0, 0, 0])
    assert span_reduce(sub, w) == span_reduce(sub, w + sub[0] + sub[1])
