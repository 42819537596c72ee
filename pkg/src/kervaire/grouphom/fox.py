"""Fox calculus and (co)homology of a one-relator group with local coefficients.

Chains use the presentation complex (one vertex, an edge per generator, one
2-cell).  A coefficient module M is a left module through ``rho``; for
homology it is made a right module by ``m . g = rho(g)^-1 m``, which gives

    d1(c) = sum_x (rho(x)^-1 + 1) c_x
    d2(m)_x = sum_{w in dr/dx} rho(w)^-1 m

and for cohomology (crossed homomorphisms)

    delta0(m)_x = (rho(x) + 1) m
    delta1(u) = sum_x rho(dr/dx) u_x.

Chains and cochains in degree 1 are stored as stacked vectors of length
``len(generators) * dim``, generator blocks in presentation order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..f2core import (
    BitMatrix,
    BitVector,
    DimensionError,
    complement_basis,
    kernel_basis,
    rank,
    solve,
)
from .words import GroupWord, Presentation, Representation


class PairingError(ValueError):
    """Coefficient pairing is not invariant under the representation."""


class CycleError(ValueError):
    """Fiber class is not invariant under the monodromy of the loop."""


def fox_derivative(word: GroupWord, gen: str) -> frozenset[GroupWord]:
    """Fox derivative d(word)/d(gen) reduced mod 2, as a set of reduced words.

    Forward occurrences contribute the prefix before the letter, inverse
    occurrences the prefix including it (sign dropped mod 2).
    """
    terms: set[GroupWord] = set()
    prefix = GroupWord()
    for g, e in word:
        if e < 0:
            prefix = prefix * GroupWord(((g, e),))
        if g == gen:
            key = prefix.reduced()
            terms ^= {key}
        if e > 0:
            prefix = prefix * GroupWord(((g, e),))
    return frozenset(terms)


def format_group_ring(elem: frozenset[GroupWord]) -> str:
    if not elem:
        return "0"
    return " + ".join(sorted(str(w) for w in elem))


def _block(rep: Representation, word_set: frozenset[GroupWord], inverse: bool) -> BitMatrix:
    acc = BitMatrix.zeros(rep.dim, rep.dim)
    for w in word_set:
        acc = acc + rep.evaluate(w.inverse() if inverse else w)
    return acc


@dataclass(frozen=True)
class FoxComplex:
    """C2 = M --d2--> C1 = M^g --d1--> C0 = M, plus the dual cochain maps."""

    presentation: Presentation
    rep: Representation
    d1: BitMatrix
    d2: BitMatrix
    delta0: BitMatrix
    delta1: BitMatrix

    @classmethod
    def build(cls, presentation: Presentation, rep: Representation) -> "FoxComplex":
        if rep.presentation != presentation:
            raise ValueError("representation belongs to a different presentation")
        m = rep.dim
        ident = BitMatrix.identity(m)
        d1_blocks, d2_blocks, dl0_blocks, dl1_blocks = [], [], [], []
        for x in presentation.generators:
            fox = fox_derivative(presentation.relator, x)
            d1_blocks.append(rep.letter(x, -1) + ident)
            d2_blocks.append(_block(rep, fox, inverse=True))
            dl0_blocks.append(rep.letter(x, 1) + ident)
            dl1_blocks.append(_block(rep, fox, inverse=False))
        return cls(
            presentation,
            rep,
            d1=BitMatrix.hstack(d1_blocks),
            d2=BitMatrix.vstack(d2_blocks),
            delta0=BitMatrix.vstack(dl0_blocks),
            delta1=BitMatrix.hstack(dl1_blocks),
        )

    @property
    def module_dim(self) -> int:
        return self.rep.dim

    @property
    def ngens(self) -> int:
        return len(self.presentation.generators)

    def slot(self, gen: str) -> int:
        return self.presentation.index(gen) * self.rep.dim

    def split(self, chain: BitVector) -> dict[str, BitVector]:
        m = self.rep.dim
        return {
            g: chain.slice(i * m, (i + 1) * m) for i, g in enumerate(self.presentation.generators)
        }

    def stack(self, values: Mapping[str, BitVector]) -> BitVector:
        bits = 0
        m = self.rep.dim
        for i, g in enumerate(self.presentation.generators):
            v = values.get(g, BitVector.zeros(m))
            if v.length != m:
                raise DimensionError(f"value for {g} has length {v.length}, module has {m}")
            bits |= v.bits << (i * m)
        return BitVector(self.ngens * m, bits)


@dataclass(frozen=True)
class LocalHomology:
    complex: FoxComplex
    dims: tuple[int, int, int]
    h0_basis: list[BitVector]
    h1_basis: list[BitVector]
    h2_basis: list[BitVector]
    boundaries: list[BitVector]

    def h1_coordinates(self, cycle: BitVector) -> BitVector:
        """Coordinates of a 1-cycle's class in ``h1_basis``."""
        if not self.complex.d1.apply(cycle).is_zero():
            raise ValueError("chain is not a cycle")
        cols = self.h1_basis + self.boundaries
        if not cols:
            return BitVector.zeros(0)
        x = solve(BitMatrix.from_columns(cols, cycle.length), cycle)
        assert x is not None
        return x.slice(0, len(self.h1_basis))

    def is_boundary(self, chain: BitVector) -> bool:
        return self.h1_coordinates(chain).is_zero()


def local_homology(presentation: Presentation, rep: Representation) -> LocalHomology:
    cx = FoxComplex.build(presentation, rep)
    if not (cx.d1 @ cx.d2).is_zero():
        raise AssertionError("d1 d2 != 0; presentation complex is inconsistent")
    m = rep.dim
    r1, r2 = rank(cx.d1), rank(cx.d2)
    image_d1 = cx.d1.column_vectors()
    h0 = complement_basis(image_d1, [BitVector.unit(m, i) for i in range(m)])
    z1 = kernel_basis(cx.d1)
    b1 = cx.d2.column_vectors()
    h1 = complement_basis(b1, z1)
    h2 = kernel_basis(cx.d2)
    dims = (m - r1, len(z1) - r2, len(h2))
    assert dims == (len(h0), len(h1), len(h2))
    boundaries = complement_basis([], b1)
    return LocalHomology(cx, dims, h0, h1, h2, boundaries)


@dataclass(frozen=True)
class Cocycle:
    """Crossed homomorphism u with u(xy) = u(x) + rho(x) u(y)."""

    rep: Representation
    values: Mapping[str, BitVector]

    def evaluate(self, word: GroupWord) -> BitVector:
        acc = BitVector.zeros(self.rep.dim)
        transport = BitMatrix.identity(self.rep.dim)
        for g, e in word:
            if e > 0:
                step = self.values[g]
            else:
                step = self.rep.letter(g, -1).apply(self.values[g])
            acc = acc + transport.apply(step)
            transport = transport @ self.rep.letter(g, e)
        return acc

    def is_cocycle(self) -> bool:
        return self.evaluate(self.rep.presentation.relator).is_zero()

    def stacked(self) -> BitVector:
        cx_gens = self.rep.presentation.generators
        bits = 0
        for i, g in enumerate(cx_gens):
            bits |= self.values[g].bits << (i * self.rep.dim)
        return BitVector(len(cx_gens) * self.rep.dim, bits)

    @classmethod
    def from_stacked(cls, rep: Representation, vec: BitVector) -> "Cocycle":
        m = rep.dim
        gens = rep.presentation.generators
        if vec.length != len(gens) * m:
            raise DimensionError("stacked cochain has wrong length")
        return cls(rep, {g: vec.slice(i * m, (i + 1) * m) for i, g in enumerate(gens)})

    @classmethod
    def principal(cls, rep: Representation, m: BitVector) -> "Cocycle":
        """The coboundary x -> (rho(x) + 1) m."""
        ident = BitMatrix.identity(rep.dim)
        return cls(rep, {g: (rep.images[g] + ident).apply(m) for g in rep.presentation.generators})

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.rep, {g: self.values[g] + other.values[g] for g in self.values})


def h1_cocycle_basis(presentation: Presentation, rep: Representation) -> list[Cocycle]:
    """Cocycles representing a basis of H^1(pi; M)."""
    cx = FoxComplex.build(presentation, rep)
    z1 = kernel_basis(cx.delta1)
    b1 = cx.delta0.column_vectors()
    return [Cocycle.from_stacked(rep, v) for v in complement_basis(b1, z1)]


def character(rep: Representation, values: Mapping[str, int]) -> Cocycle:
    """Cocycle with trivial one-dimensional coefficients from generator values."""
    if rep.dim != 1:
        raise DimensionError("characters need one-dimensional coefficients")
    return Cocycle(rep, {g: BitVector(1, values.get(g, 0) & 1) for g in rep.presentation.generators})


def check_pairing(rep: Representation, pairing: BitMatrix) -> None:
    if pairing.shape != (rep.dim, rep.dim):
        raise DimensionError(f"pairing shape {pairing.shape} does not match module dim {rep.dim}")
    for g in rep.presentation.generators:
        r = rep.images[g]
        if r.T @ pairing @ r != pairing:
            raise PairingError(f"pairing is not invariant under the image of {g}")


def cup_form(presentation: Presentation, rep: Representation, pairing: BitMatrix) -> BitMatrix:
    """Matrix K on stacked cochains with (u cup v)([relator 2-cell]) = u^T K v.

    Forward letter x at position i contributes B(u(p_{i-1}), rho(p_{i-1}) v(x));
    an inverse letter contributes B(u(p_i), rho(p_i) v(x)).  These are the
    terms of the fundamental 2-cycle in the bar resolution.
    """
    check_pairing(rep, pairing)
    gens = presentation.generators
    m = rep.dim
    n = len(gens) * m

    def selector(g: str) -> BitMatrix:
        i = presentation.index(g)
        return BitMatrix(m, n, tuple(1 << (i * m + k) for k in range(m)))

    ident = BitMatrix.identity(m)
    U = BitMatrix.zeros(m, n)  # u(p) as a linear function of the stacked cochain
    P = ident  # rho(p)
    K = BitMatrix.zeros(n, n)
    for g, e in presentation.relator:
        E = selector(g)
        if e > 0:
            K = K + U.T @ pairing @ P @ E
            U = U + P @ E
            P = P @ rep.images[g]
        else:
            step = rep.letter(g, -1)
            U = U + P @ step @ E
            P = P @ step
            K = K + U.T @ pairing @ P @ E
    assert P == ident
    return K


def cup_eval(u: Cocycle, v: Cocycle, pairing: BitMatrix | None = None) -> int:
    """(u cup v) evaluated on the fundamental class, coefficients paired by ``pairing``."""
    rep = u.rep
    if pairing is None:
        pairing = BitMatrix.identity(rep.dim)
    K = cup_form(rep.presentation, rep, pairing)
    return K.bilinear(u.stacked(), v.stacked())


def _block_pairing(pairing: BitMatrix, ngens: int) -> BitMatrix:
    return BitMatrix.block_diag([pairing] * ngens)


def kronecker(u: Cocycle, chain: BitVector, pairing: BitMatrix | None = None) -> int:
    """<u, c> = sum_x B(u(x), c_x)."""
    rep = u.rep
    if pairing is None:
        pairing = BitMatrix.identity(rep.dim)
    full = _block_pairing(pairing, len(rep.presentation.generators))
    return full.bilinear(u.stacked(), chain)


def pd_cap(v: Cocycle, pairing: BitMatrix | None = None) -> BitVector:
    """Cap product of the fundamental class with ``v``, as a 1-chain.

    Defined by <u, pd_cap(v)> = (u cup v)[P] for every 1-cochain u.
    """
    rep = v.rep
    if pairing is None:
        pairing = BitMatrix.identity(rep.dim)
    K = cup_form(rep.presentation, rep, pairing)
    full = _block_pairing(pairing, len(rep.presentation.generators))
    return full.inverse().apply(K.apply(v.stacked()))


def loop_cycle(word: GroupWord, omega: BitVector, rep: Representation) -> BitVector:
    """1-cycle of the loop ``word`` carrying the fiber class ``omega``.

    Slot of a forward letter gets rho(p_{i-1})^-1 omega, slot of an inverse
    letter gets rho(p_i)^-1 omega, so the boundary telescopes to
    rho(word)^-1 omega + omega.
    """
    holonomy = rep.evaluate(word)
    moved = holonomy.apply(omega)
    if moved != omega:
        raise CycleError(f"fiber class {omega} is moved to {moved} around {word}")
    pres = rep.presentation
    m = rep.dim
    slots = {g: 0 for g in pres.generators}
    P_inv = BitMatrix.identity(m)  # rho(p)^-1
    for g, e in word:
        if e > 0:
            slots[g] ^= P_inv.apply(omega).bits
            P_inv = rep.letter(g, -1) @ P_inv
        else:
            P_inv = rep.letter(g, 1) @ P_inv
            slots[g] ^= P_inv.apply(omega).bits
    bits = 0
    for i, g in enumerate(pres.generators):
        bits |= slots[g] << (i * m)
    return BitVector(len(pres.generators) * m, bits)


@dataclass(frozen=True)
class DualityData:
    """Poincare duality between H^1(pi; M) and H_1(pi; M) for a paired module."""

    homology: LocalHomology
    cocycles: list[Cocycle]
    pairing: BitMatrix
    gram: BitMatrix  # cup form on the cocycle basis
    pd_matrix: BitMatrix  # column j = H_1 coordinates of pd_cap(cocycles[j])

    def cohomology_class(self, cycle: BitVector) -> BitVector:
        """H^1 coordinates of the Poincare dual of a 1-cycle."""
        coords = self.homology.h1_coordinates(cycle)
        x = solve(self.pd_matrix, coords)
        if x is None:
            raise ArithmeticError("duality map is not surjective")
        return x

    def intersection(self, c1: BitVector, c2: BitVector) -> int:
        return self.gram.bilinear(self.cohomology_class(c1), self.cohomology_class(c2))


def duality(presentation: Presentation, rep: Representation, pairing: BitMatrix) -> DualityData:
    hom = local_homology(presentation, rep)
    cocycles = h1_cocycle_basis(presentation, rep)
    K = cup_form(presentation, rep, pairing)
    stacks = [u.stacked() for u in cocycles]
    n = len(stacks)
    gram = BitMatrix.from_lists(
        [[K.bilinear(stacks[i], stacks[j]) for j in range(n)] for i in range(n)], n
    ) if n else BitMatrix.zeros(0, 0)
    cols = [hom.h1_coordinates(pd_cap(u, pairing)) for u in cocycles]
    pd = BitMatrix.from_columns(cols, len(hom.h1_basis)) if cols else BitMatrix.zeros(0, 0)
    return DualityData(hom, cocycles, pairing, gram, pd)
