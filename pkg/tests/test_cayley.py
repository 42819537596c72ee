import random
from fractions import Fraction

import pytest

from kervaire.cayley import (
    Octonion,
    apply_matrix,
    check_norm_multiplicativity,
    multiply,
    neutrality_operator,
    random_orthonormal_pair,
    random_rational_octonion,
    structure_constants,
    verify_neutrality,
)

E = [Octonion.unit(i) for i in range(8)]


def test_table():
    assert multiply(E[1], E[2]) == E[3]
    assert multiply(E[2], E[1]) == -E[3]
    for i in range(1, 8):
        assert multiply(E[i], E[i]) == -E[0]
        assert multiply(E[0], E[i]) == multiply(E[i], E[0]) == E[i]
    # each row of the table permutes the basis up to sign
    table = structure_constants()
    for i in range(8):
        assert sorted(k for _, k in table[i]) == list(range(8))


def test_alternative_and_moufang():
    rng = random.Random(12)
    for _ in range(100):
        x, y, z = (random_rational_octonion(rng, 5) for _ in range(3))
        assert multiply(multiply(x, x), y) == multiply(x, multiply(x, y))
        assert multiply(multiply(y, x), x) == multiply(y, multiply(x, x))
        # Moufang: z(x(zy)) = ((zx)z)y
        assert multiply(z, multiply(x, multiply(z, y))) == multiply(multiply(multiply(z, x), z), y)


def test_not_associative():
    assert multiply(multiply(E[1], E[2]), E[4]) != multiply(E[1], multiply(E[2], E[4]))


def test_conjugate_and_norm():
    rng = random.Random(1)
    x = random_rational_octonion(rng)
    assert multiply(x, x.conjugate()) == Octonion((x.norm2(),) + (Fraction(0),) * 7)
    assert check_norm_multiplicativity(200, seed=3) == 0


def test_operator_endpoints_exact():
    e1 = E[1]
    ident = [[Fraction(int(i == j)) for j in range(7)] for i in range(7)]
    assert neutrality_operator(0, e1) == ident
    m1 = neutrality_operator(1, e1)
    assert apply_matrix(m1, E[1].imag) == list(E[1].imag)
    assert apply_matrix(m1, E[2].imag) == [-c for c in E[2].imag]
    half = neutrality_operator(Fraction(1, 2), e1)
    assert apply_matrix(half, E[2].imag) == list(multiply(E[1], E[2]).imag)


def test_operator_rejects_bad_axis():
    with pytest.raises(ValueError):
        neutrality_operator(0, E[1] + E[2])
    with pytest.raises(ValueError):
        neutrality_operator(0, E[0])


def test_random_pairs_are_exact():
    rng = random.Random(4)
    for _ in range(20):
        a, b = random_orthonormal_pair(rng)
        assert a.norm2() == b.norm2() == 1 and a.dot(b) == 0 and a.real == b.real == 0


def test_small_neutrality_runs():
    rep = verify_neutrality(2, 1, seed=0)
    assert rep.mode == "exact" and rep.ok
    rep = verify_neutrality(5, 3, seed=1)
    assert rep.mode == "mixed" and rep.ok
    with pytest.raises(ValueError):
        verify_neutrality(1, 1)
