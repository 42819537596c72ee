"""Stiefel-Whitney classes of flat bundles with signed-permutation holonomy.

w1 is the determinant character.  The Pin lifting obstruction is found by
writing each holonomy matrix as a product of reflections in integer vectors,
lifting to the Clifford algebra of the rank-n form with e_i^2 = +1 (plus) or
e_i^2 = -1 (minus), and evaluating the relator.  The plus obstruction is w2,
the minus one is w2 + w1^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ..f2core import BitMatrix, BitVector
from .fox import Cocycle
from .words import GroupWord, Presentation, RelatorError, Representation

IntMatrix = tuple[tuple[int, ...], ...]


class LiftError(ArithmeticError):
    pass


def _matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    n = len(B[0])
    return tuple(
        tuple(sum(a * B[k][j] for k, a in enumerate(row)) for j in range(n)) for row in A
    )


def _identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _transpose(A: IntMatrix) -> IntMatrix:
    return tuple(zip(*A))


def signed_permutation(matrix: Sequence[Sequence[int]]) -> IntMatrix:
    m = tuple(tuple(int(x) for x in row) for row in matrix)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("signed permutation matrix must be square")
    for row in m:
        if sorted(abs(x) for x in row) != [0] * (n - 1) + [1]:
            raise ValueError(f"row {row} is not a signed unit vector")
    for col in _transpose(m):
        if sorted(abs(x) for x in col) != [0] * (n - 1) + [1]:
            raise ValueError(f"column {col} is not a signed unit vector")
    return m


def perm_matrix(perm: Sequence[int], signs: Sequence[int] | None = None) -> IntMatrix:
    """Matrix sending e_i to signs[i] * e_{perm[i]}."""
    n = len(perm)
    signs = signs or [1] * n
    rows = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        rows[j][i] = signs[i]
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class SignedRepresentation:
    """Representation into signed permutation matrices (a finite subgroup of O(n))."""

    presentation: Presentation
    images: Mapping[str, IntMatrix]

    def __post_init__(self):
        if set(self.images) != set(self.presentation.generators):
            raise ValueError("images must be given for exactly the presentation generators")
        fixed = {}
        for g, m in self.images.items():
            try:
                fixed[g] = signed_permutation(m)
            except ValueError as exc:
                raise ValueError(f"image of {g} is not orthogonal: {exc}") from None
        object.__setattr__(self, "images", fixed)
        n = {len(m) for m in fixed.values()}
        if len(n) != 1:
            raise ValueError("images have differing sizes")
        res = self.evaluate(self.presentation.relator)
        if res != _identity(self.dim):
            raise RelatorError(f"relator evaluates to {res}, not the identity")

    @property
    def dim(self) -> int:
        return len(next(iter(self.images.values())))

    def letter(self, g: str, e: int) -> IntMatrix:
        m = self.images[g]
        return m if e > 0 else _transpose(m)

    def evaluate(self, word: GroupWord) -> IntMatrix:
        out = _identity(self.dim)
        for g, e in word:
            out = _matmul(out, self.letter(g, e))
        return out

    def mod2(self) -> Representation:
        return Representation(
            self.presentation,
            {g: BitMatrix.from_lists([[x & 1 for x in row] for row in m]) for g, m in self.images.items()},
        )


def determinant(m: IntMatrix) -> int:
    """Determinant of a signed permutation matrix."""
    n = len(m)
    perm = [next(i for i in range(n) if m[i][j]) for j in range(n)]
    sign = 1
    for j in range(n):
        sign *= m[perm[j]][j]
    seen = [False] * n
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def w1_character(rho: SignedRepresentation) -> Cocycle:
    """Generator g -> 1 exactly when det rho(g) = -1."""
    triv = Representation.trivial(rho.presentation, 1)
    return Cocycle(
        triv,
        {g: BitVector(1, int(determinant(m) < 0)) for g, m in rho.images.items()},
    )


# Clifford algebra: elements are dicts {blade bitmask: int coefficient}.

Clifford = dict[int, int]


def _blade_sign(a: int, b: int, square: int) -> int:
    # reorder e_A e_B into e_{A xor B}: count transpositions
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    sign = -1 if swaps & 1 else 1
    if square < 0 and bin(a & b).count("1") & 1:
        sign = -sign
    return sign


def cl_mul(x: Clifford, y: Clifford, square: int) -> Clifford:
    out: Clifford = {}
    for a, ca in x.items():
        for b, cb in y.items():
            k = a ^ b
            out[k] = out.get(k, 0) + _blade_sign(a, b, square) * ca * cb
    return {k: v for k, v in out.items() if v}


def cl_vector(v: Sequence[int]) -> Clifford:
    return {1 << i: c for i, c in enumerate(v) if c}


def _grade_involution(x: Clifford) -> Clifford:
    return {k: (-v if bin(k).count("1") & 1 else v) for k, v in x.items()}


def _reverse(x: Clifford) -> Clifford:
    out = {}
    for k, v in x.items():
        g = bin(k).count("1")
        out[k] = -v if (g * (g - 1) // 2) & 1 else v
    return out


def reflection_factors(m: IntMatrix) -> list[tuple[int, ...]]:
    """Integer vectors v_1..v_k with m = R(v_1) ... R(v_k), R(v) the reflection in v-perp.

    Uses axis vectors for sign flips and axis differences for transpositions.
    """
    n = len(m)
    cur = [list(r) for r in m]
    factors: list[tuple[int, ...]] = []

    # left-multiply by reflections until the identity is reached; record them
    def reflect_rows(v):
        # R(v) @ cur
        vv = sum(c * c for c in v)
        for j in range(n):
            dot = sum(v[i] * cur[i][j] for i in range(n))
            if dot:
                for i in range(n):
                    cur[i][j] -= Fraction(2 * dot * v[i], vv)
        for i in range(n):
            for j in range(n):
                cur[i][j] = int(cur[i][j])

    for j in range(n):
        i = next(r for r in range(n) if cur[r][j])
        if i != j:
            v = tuple((1 if k == i else -1 if k == j else 0) for k in range(n))
            reflect_rows(v)
            factors.append(v)
        if cur[j][j] == -1:
            v = tuple(int(k == j) for k in range(n))
            reflect_rows(v)
            factors.append(v)
    assert cur == [list(r) for r in _identity(n)]
    # R_k ... R_1 m = I  =>  m = R_1 ... R_k
    return factors


@dataclass(frozen=True)
class CliffordLift:
    element: Clifford  # integer product of reflection vectors
    norm_squared: int  # product of squared lengths; true lift is element / sqrt(norm_squared)
    square: int


def lift(m: IntMatrix, square: int) -> CliffordLift:
    elem: Clifford = {0: 1}
    norm = 1
    for v in reflection_factors(m):
        elem = cl_mul(elem, cl_vector(v), square)
        norm *= sum(c * c for c in v)
    return CliffordLift(elem, norm, square)


def _inverse_lift(l: CliffordLift) -> CliffordLift:
    # (v1..vk)^-1 = (vk..v1) / prod(square |v_i|^2), so the normalised inverse is
    # square^k (vk..v1) / sqrt(N): same normaliser, reversed element
    parity = next((bin(k).count("1") & 1 for k in l.element), 0)
    sign = -1 if (l.square < 0 and parity) else 1
    return CliffordLift({b: sign * c for b, c in _reverse(l.element).items()}, l.norm_squared, l.square)


def twisted_adjoint(l: CliffordLift, v: Sequence[int]) -> tuple[Fraction, ...]:
    """alpha(x) v x^-1 for the normalised lift x, as a vector."""
    inv = _inverse_lift(l)
    prod = cl_mul(cl_mul(_grade_involution(l.element), cl_vector(v), l.square), inv.element, l.square)
    n = len(v)
    out = []
    for i in range(n):
        out.append(Fraction(prod.get(1 << i, 0), l.norm_squared))
    if any(c for k, c in prod.items() if bin(k).count("1") != 1):
        raise LiftError("twisted adjoint action left the vector subspace")
    return tuple(out)


def check_lift(m: IntMatrix, square: int) -> bool:
    l = lift(m, square)
    n = len(m)
    for i in range(n):
        e = [int(k == i) for k in range(n)]
        img = twisted_adjoint(l, e)
        if img != tuple(Fraction(m[r][i]) for r in range(n)):
            return False
    return True


def relator_lift(rho: SignedRepresentation, square: int) -> int:
    """Value (+1 or -1) of the relator evaluated on lifts of the generator images."""
    lifts = {g: lift(m, square) for g, m in rho.images.items()}
    inverses = {g: _inverse_lift(l) for g, l in lifts.items()}
    elem: Clifford = {0: 1}
    norm = 1
    for g, e in rho.presentation.relator:
        l = lifts[g] if e > 0 else inverses[g]
        elem = cl_mul(elem, l.element, square)
        norm *= l.norm_squared
    root = math.isqrt(norm)
    if root * root != norm:
        raise LiftError(f"normaliser {norm} is not a perfect square")
    if set(elem) != {0} or abs(elem[0]) != root:
        raise LiftError(f"relator lift {elem}/{root} is not +-1")
    return elem[0] // root


def pin_lift_w2(rho: SignedRepresentation, signature: str) -> int:
    """0 if the relator lifts to +1, 1 if to -1."""
    if signature not in ("plus", "minus"):
        raise ValueError("signature must be 'plus' or 'minus'")
    counts: dict[str, int] = {}
    for g, _ in rho.presentation.relator:
        counts[g] = counts.get(g, 0) + 1
    if any(c % 2 for c in counts.values()):
        raise LiftError("lift depends on sign choices: a generator occurs an odd number of times")
    return int(relator_lift(rho, 1 if signature == "plus" else -1) < 0)
