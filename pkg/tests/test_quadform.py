import random
from itertools import product

import pytest

from kervaire.f2core import BitMatrix, BitVector
from kervaire.quadform import (
    DegenerateFormError,
    QuadraticSpace,
    arf,
    arf_count_oracle,
    arf_from_pairs,
    extend_quadratic,
    hyperbolic_gram,
    random_quadratic_space,
    symplectic_basis,
)


def majority(space):
    n = space.dim
    ones = sum(space.q(BitVector(n, k)) for k in range(1 << n))
    return int(ones > (1 << n) // 2)


def test_hyperbolic_plane_values():
    assert arf_from_pairs([(0, 0)]) == 0
    assert arf_from_pairs([(1, 0)]) == 0
    assert arf_from_pairs([(1, 1)]) == 1
    assert arf_from_pairs([(1, 1), (1, 1)]) == 0
    assert arf_from_pairs([(1, 1), (0, 1), (1, 1)]) == 0


def test_symplectic_basis_is_symplectic():
    rng = random.Random(9)
    for _ in range(30):
        sp = random_quadratic_space(rng, rng.randint(1, 5))
        pairs = symplectic_basis(sp.gram)
        vecs = [v for p in pairs for v in p]
        assert len(vecs) == sp.dim
        for i, x in enumerate(vecs):
            for j, y in enumerate(vecs):
                assert sp.pairing(x, y) == int(i // 2 == j // 2 and i != j)


def test_degenerate_form_names_radical():
    gram = BitMatrix.from_lists([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    with pytest.raises(DegenerateFormError) as info:
        symplectic_basis(gram)
    assert gram.apply(info.value.radical).is_zero()
    with pytest.raises(ValueError):
        symplectic_basis(BitMatrix.from_lists([[1, 0], [0, 1]]))


def test_arf_is_majority_value():
    rng = random.Random(1)
    for _ in range(40):
        sp = random_quadratic_space(rng, rng.randint(1, 4))
        assert arf(sp) == majority(sp) == arf_count_oracle(sp)


def test_extension_is_refinement_and_basis_free():
    rng = random.Random(3)
    gram = hyperbolic_gram(2)
    for vals in product((0, 1), repeat=4):
        basis = [BitVector.unit(4, i) for i in range(4)]
        sp = extend_quadratic(list(vals), gram, basis)
        assert sp.is_refinement()
        assert [sp.q(b) for b in basis] == list(vals)
        # transport to a random symplectic change of basis
        while True:
            M = BitMatrix.from_lists([[rng.randint(0, 1) for _ in range(4)] for _ in range(4)])
            if M.is_invertible():
                break
        assert arf(sp.transported(M)) == arf(sp)


def test_refinement_detection():
    sp = QuadraticSpace(hyperbolic_gram(1), BitVector.from_list([1, 1]))
    assert sp.is_refinement()
    assert sp.q(BitVector.from_list([1, 1])) == 1
