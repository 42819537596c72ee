import random

import pytest

from kervaire.steenrod import (
    adem,
    adem_rewrite,
    admissible_basis,
    apply_sq,
    binom2,
    check_kervaire_relation,
    excess,
    format_sum,
    is_admissible,
    multiply,
    parse_sum,
    poly,
    sq_on_polynomial,
    ssum,
)


def binom(n, k):
    from math import comb

    return comb(n, k) % 2


def test_lucas_matches_math_comb():
    for n in range(40):
        for k in range(-1, 42):
            assert binom2(n, k) == (binom(n, k) if 0 <= k <= n else 0)


def test_small_adem_relations():
    assert adem(1, 1) == frozenset()
    assert adem(1, 2) == ssum((3,))
    assert adem(2, 2) == ssum((3, 1))
    assert adem(3, 2) == frozenset()
    assert adem(2, 3) == ssum((5,), (4, 1))
    with pytest.raises(ValueError):
        adem(4, 2)


def test_kervaire_square_rewrites():
    assert adem_rewrite(ssum((16, 16))) == parse_sum("Sq31 Sq1 + Sq30 Sq2 + Sq28 Sq4 + Sq24 Sq8")
    for j in range(1, 7):
        assert check_kervaire_relation(j, 0) == frozenset()
        assert check_kervaire_relation(j, 1) == ssum((2 ** (j + 1) - 1, 1))
    assert format_sum(check_kervaire_relation(4, 1)) == "Sq31 Sq1"


def test_admissible_basis():
    assert admissible_basis(12) == [(8, 3, 1), (8, 4), (9, 2, 1), (9, 3), (10, 2), (11, 1), (12,)]
    # dimensions of the Steenrod algebra in low degrees
    assert [len(admissible_basis(d)) for d in range(10)] == [1, 1, 1, 2, 2, 2, 3, 4, 4, 5]
    for d in range(1, 20):
        for m in admissible_basis(d):
            assert is_admissible(m) and sum(m) == d
    assert excess((4, 2, 1)) == 1


def test_rewrite_output_is_admissible_and_associative():
    rng = random.Random(8)
    for _ in range(30):
        x = ssum(tuple(rng.randint(1, 6) for _ in range(rng.randint(1, 3))))
        y = ssum(tuple(rng.randint(1, 6) for _ in range(rng.randint(1, 3))))
        z = ssum(tuple(rng.randint(1, 6) for _ in range(rng.randint(1, 2))))
        assert all(is_admissible(m) for m in adem_rewrite(x))
        assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


def test_action_on_polynomials():
    t = poly((1,))
    assert apply_sq(1, t) == poly((2,))
    assert apply_sq(2, t) == frozenset()
    # Sq^k t^n = binom(n, k) t^{n+k}
    for n in range(1, 12):
        for k in range(n + 2):
            expected = poly((n + k,)) if k <= n and binom(n, k) else frozenset()
            assert apply_sq(k, poly((n,))) == expected
    # top square is squaring, Cartan formula on a product
    x = poly((1, 2, 0))
    assert apply_sq(3, x) == poly((2, 4, 0))
    assert sq_on_polynomial(ssum((1,)), poly((1, 1))) == poly((2, 1), (1, 2))


def test_action_respects_adem_sample():
    rng = random.Random(0)
    for _ in range(50):
        a = rng.randint(1, 9)
        b = rng.randint(a // 2 + 1, 10)
        p = poly(tuple(rng.randint(0, 4) for _ in range(4)), tuple(rng.randint(0, 4) for _ in range(4)))
        assert sq_on_polynomial(ssum((a, b)), p) == sq_on_polynomial(adem(a, b), p)


def test_parse_and_format_round_trip():
    s = parse_sum("Sq^16 Sq^16 + Sq31 Sq1 + 1")
    assert s == ssum((16, 16), (31, 1), ())
    assert parse_sum(format_sum(s)) == s
    assert parse_sum("0") == frozenset()
    with pytest.raises(ValueError):
        parse_sum("Sq Sq")
