"""Homology of a one-relator surface group with local coefficients."""
from .fox import (
    Cocycle,
    CycleError,
    DualityData,
    FoxComplex,
    LocalHomology,
    PairingError,
    character,
    cup_eval,
    cup_form,
    duality,
    fox_derivative,
    h1_cocycle_basis,
    kronecker,
    local_homology,
    loop_cycle,
    pd_cap,
)
from .pin import SignedRepresentation, perm_matrix, pin_lift_w2, w1_character
from .words import (
    GroupWord,
    Presentation,
    RelatorError,
    Representation,
    generated_group,
    parse_cycles,
    permutation_representation,
    surface_presentation,
)
