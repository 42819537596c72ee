import random

import pytest

from kervaire.f2core import BitMatrix, BitVector, rank
from kervaire.grouphom import (
    Cocycle,
    CycleError,
    GroupWord,
    PairingError,
    Presentation,
    RelatorError,
    Representation,
    character,
    cup_eval,
    duality,
    fox_derivative,
    generated_group,
    h1_cocycle_basis,
    kronecker,
    local_homology,
    loop_cycle,
    parse_cycles,
    pd_cap,
    permutation_representation,
    surface_presentation,
)
from kervaire.grouphom.fox import FoxComplex, cup_form, format_group_ring

P = surface_presentation()
TORUS = Presentation.parse(["x", "y"], "x y x^-1 y^-1")


def test_word_parsing_and_algebra():
    w = GroupWord.parse("a^2 b1 b2^-1")
    assert str(w) == "a a b1 b2^-1"
    assert (w * w.inverse()).reduced() == GroupWord(())
    assert GroupWord.parse("a b1⁻¹") == GroupWord.parse("a b1^-1")
    assert len(P.relator) == 6
    assert P.euler_characteristic == -1
    with pytest.raises(ValueError):
        GroupWord.parse("a ^ ^")


def test_fox_derivatives_of_relator():
    d = {g: fox_derivative(P.relator, g) for g in P.generators}
    # d/da (a a ...) = 1 + a
    assert format_group_ring(d["a"]) in ("1 + a", "a + 1")
    assert len(d["b1"]) == 2 and len(d["b2"]) == 2


def test_cycles_and_group_closure():
    assert parse_cycles("(1 3)", 4) == [2, 1, 0, 3]
    assert parse_cycles("(2 3)(4 1)", 4) == [3, 2, 1, 0]
    with pytest.raises(ValueError):
        parse_cycles("(1 2)(2 3)", 4)
    d4 = generated_group([parse_cycles("(1 3)", 4), parse_cycles("(1 2)(3 4)", 4)])
    assert len(d4) == 8


def test_relator_check_rejects_bad_representation():
    perms = {"a": parse_cycles("(1 2 3)", 3), "b1": list(range(3)), "b2": list(range(3))}
    with pytest.raises(RelatorError):
        permutation_representation(P, perms)


def test_trivial_coefficients_surface_homology():
    triv = Representation.trivial(P)
    hom = local_homology(P, triv)
    assert hom.dims == (1, 3, 1)
    assert local_homology(TORUS, Representation.trivial(TORUS)).dims == (1, 2, 1)


def test_trivial_cup_form_is_standard():
    triv = Representation.trivial(P)
    star = {g: character(triv, {g: 1}) for g in P.generators}
    table = {(x, y): cup_eval(star[x], star[y]) for x in P.generators for y in P.generators}
    assert table[("a", "a")] == 1
    assert table[("b1", "b2")] == table[("b2", "b1")] == 1
    assert table[("a", "b1")] == table[("a", "b2")] == 0
    assert table[("b1", "b1")] == table[("b2", "b2")] == 0


def _torus_rep(n, i, j):
    c = [(k + 1) % n for k in range(n)]
    power = lambda e: [(k + e) % n for k in range(n)]
    return permutation_representation(TORUS, {"x": power(i), "y": power(j)})


def test_shapiro_oracle_on_torus_covers():
    # H_1(pi; F2[pi/H]) = H_1 of the cover; every cover of a torus is a disjoint union of tori
    rng = random.Random(7)
    for _ in range(15):
        n = rng.randint(1, 8)
        i, j = rng.randrange(n), rng.randrange(n)
        rep = _torus_rep(n, i, j)
        orbits = len({frozenset((k + a * i + b * j) % n for a in range(n) for b in range(n)) for k in range(n)})
        assert local_homology(TORUS, rep).dims == (orbits, 2 * orbits, orbits)


def test_cocycles_and_coboundaries():
    rep = permutation_representation(P, {"a": [2, 1, 0, 3], "b1": [1, 0, 3, 2], "b2": [3, 2, 1, 0]})
    for u in h1_cocycle_basis(P, rep):
        assert u.is_cocycle()
    m = BitVector.from_list([1, 0, 0, 0])
    assert Cocycle.principal(rep, m).is_cocycle()
    cx = FoxComplex.build(P, rep)
    assert (cx.delta1 @ cx.delta0).is_zero()
    assert (cx.d1 @ cx.d2).is_zero()


def test_duality_adjunction_and_gram():
    rep = permutation_representation(P, {"a": [2, 1, 0, 3], "b1": [1, 0, 3, 2], "b2": [3, 2, 1, 0]})
    pairing = BitMatrix.identity(4)
    us = h1_cocycle_basis(P, rep)
    for u in us:
        for v in us:
            assert kronecker(u, pd_cap(v, pairing), pairing) == cup_eval(u, v, pairing)
    d = duality(P, rep, pairing)
    assert rank(d.gram) == len(us)
    assert d.gram.is_symmetric()


def test_cup_form_rejects_noninvariant_pairing():
    rep = permutation_representation(P, {"a": [1, 0], "b1": [0, 1], "b2": [0, 1]})
    with pytest.raises(PairingError):
        cup_form(P, rep, BitMatrix.from_lists([[1, 0], [0, 0]]))


def test_loop_cycles():
    rep = permutation_representation(P, {"a": [2, 1, 0, 3], "b1": [1, 0, 3, 2], "b2": [3, 2, 1, 0]})
    cx = FoxComplex.build(P, rep)
    fixed = BitVector.from_list([0, 1, 0, 0])  # point 2 is fixed by a
    c = loop_cycle(GroupWord.parse("a"), fixed, rep)
    assert cx.d1.apply(c).is_zero()
    with pytest.raises(CycleError):
        loop_cycle(GroupWord.parse("a"), BitVector.from_list([1, 0, 0, 0]), rep)
    # the relator loop bounds the 2-cell
    rel = loop_cycle(P.relator, BitVector.from_list([1, 0, 0, 0]), rep)
    assert local_homology(P, rep).is_boundary(rel)
