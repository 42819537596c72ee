import random

import pytest

from kervaire.grouphom import Presentation, RelatorError, SignedRepresentation, perm_matrix, pin_lift_w2, w1_character
from kervaire.grouphom.pin import LiftError, check_lift, determinant, reflection_factors, signed_permutation

RP2 = Presentation.parse(["a"], "a a")


def random_signed(rng, n):
    perm = list(range(n))
    rng.shuffle(perm)
    return perm_matrix(perm, [rng.choice([1, -1]) for _ in range(n)])


def test_determinant_and_factors():
    rng = random.Random(4)
    for _ in range(40):
        m = random_signed(rng, rng.randint(1, 5))
        factors = reflection_factors(m)
        # each reflection has determinant -1
        assert determinant(m) == (-1) ** len(factors)
        assert check_lift(m, 1)
        assert check_lift(m, -1)


def test_signed_permutation_validation():
    with pytest.raises(ValueError):
        signed_permutation([[1, 1], [0, 1]])


def test_tautological_line_on_projective_plane():
    # w1 = 1, w2 = 0, so Pin+ lifts and Pin- does not (w2 + w1^2 = 1)
    rho = SignedRepresentation(RP2, {"a": ((-1,),)})
    assert w1_character(rho).values["a"][0] == 1
    assert pin_lift_w2(rho, "plus") == 0
    assert pin_lift_w2(rho, "minus") == 1


def test_trivial_bundle_lifts():
    rho = SignedRepresentation(RP2, {"a": perm_matrix([0, 1, 2])})
    assert pin_lift_w2(rho, "plus") == pin_lift_w2(rho, "minus") == 0


def test_two_copies_of_tautological_line():
    # w(2 gamma) = (1 + t)^2 = 1 + t^2: w1 = 0, w2 = 1
    rho = SignedRepresentation(RP2, {"a": perm_matrix([0, 1], [-1, -1])})
    assert w1_character(rho).values["a"][0] == 0
    assert pin_lift_w2(rho, "plus") == pin_lift_w2(rho, "minus") == 1


def test_relator_checked():
    with pytest.raises(RelatorError):
        SignedRepresentation(RP2, {"a": perm_matrix([1, 2, 0])})


def test_odd_occurrence_rejected():
    pres = Presentation.parse(["a", "b"], "a b a^-1 b^-1 a")
    with pytest.raises((LiftError, RelatorError)):
        rho = SignedRepresentation(pres, {"a": perm_matrix([0]), "b": perm_matrix([0])})
        pin_lift_w2(rho, "plus")
