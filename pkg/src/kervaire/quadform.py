"""Quadratic refinements of alternating forms over GF(2) and the Arf invariant."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .f2core import BitMatrix, BitVector, DimensionError, kernel_basis, solve


class DegenerateFormError(ValueError):
    def __init__(self, radical: BitVector):
        super().__init__(f"form is degenerate; radical contains {radical}")
        self.radical = radical


class RefinementError(ValueError):
    pass


def _check_alternating(gram: BitMatrix) -> None:
    if gram.rows != gram.cols:
        raise DimensionError("Gram matrix must be square")
    if not gram.is_symmetric():
        raise ValueError("Gram matrix is not symmetric")
    if not gram.diagonal().is_zero():
        raise ValueError(f"Gram matrix has nonzero diagonal {gram.diagonal()}; form is not alternating")


def symplectic_basis(gram: BitMatrix) -> list[tuple[BitVector, BitVector]]:
    """Hyperbolic pairs (a_i, b_i) for a nondegenerate alternating form.

    Greedy symplectic Gram-Schmidt: a_i is the lowest-index remaining
    vector, b_i the lowest-index remaining vector pairing to 1 with it; the
    rest are projected off span(a_i, b_i).
    """
    _check_alternating(gram)
    n = gram.rows
    radical = kernel_basis(gram)
    if radical:
        raise DegenerateFormError(radical[0])
    if n % 2:
        raise ValueError("odd dimension")
    B = gram.bilinear
    pool = [BitVector.unit(n, i) for i in range(n)]
    pairs = []
    while pool:
        a = pool.pop(0)
        j = next((k for k, v in enumerate(pool) if B(a, v)), None)
        if j is None:  # a lies in the radical of what is left
            raise DegenerateFormError(a)
        b = pool.pop(j)
        rest = []
        for v in pool:
            # v - B(v,b) a - B(v,a) b  is orthogonal to a and b
            if B(v, b):
                v = v + a
            if B(v, a):
                v = v + b
            rest.append(v)
        pool = rest
        pairs.append((a, b))
    return pairs


@dataclass(frozen=True)
class QuadraticSpace:
    """q(x) = sum x_i q_i + sum_{i<j} x_i x_j G_ij on GF(2)^dim."""

    gram: BitMatrix
    values: BitVector  # q on the standard basis

    def __post_init__(self):
        if not self.gram.is_symmetric():
            raise ValueError("Gram matrix is not symmetric")
        if self.values.length != self.gram.rows:
            raise DimensionError("value vector length does not match Gram size")

    @property
    def dim(self) -> int:
        return self.gram.rows

    def pairing(self, x: BitVector, y: BitVector) -> int:
        return self.gram.bilinear(x, y)

    def q(self, x: BitVector) -> int:
        val = x.dot(self.values)
        idx = x.support()
        for a in range(len(idx)):
            row = self.gram.data[idx[a]]
            for b in idx[a + 1:]:
                val ^= (row >> b) & 1
        return val

    def is_refinement(self) -> bool:
        """Check q(x+y) = q(x) + q(y) + B(x,y) on all pairs (dim <= 10) or basis pairs."""
        n = self.dim
        if n <= 10:
            vecs = [BitVector(n, k) for k in range(1 << n)]
        else:
            vecs = [BitVector.unit(n, i) for i in range(n)]
        table = {v.bits: self.q(v) for v in vecs}
        for x in vecs:
            for y in vecs:
                s = x + y
                qs = table.get(s.bits)
                if qs is None:
                    qs = self.q(s)
                if qs != table[x.bits] ^ table[y.bits] ^ self.pairing(x, y):
                    return False
        return True

    def transported(self, change: BitMatrix) -> "QuadraticSpace":
        """The same form in new coordinates x = change @ x'."""
        gram = change.T @ self.gram @ change
        vals = [self.q(change.column(j)) for j in range(change.cols)]
        return QuadraticSpace(gram, BitVector.from_list(vals))


def extend_quadratic(
    values_on_basis: Sequence[int], gram: BitMatrix, basis: Sequence[BitVector]
) -> QuadraticSpace:
    """Unique refinement of ``gram`` taking the given values on ``basis``."""
    n = gram.rows
    if len(basis) != n or len(values_on_basis) != n:
        raise DimensionError(f"need {n} basis vectors and values")
    if any(v not in (0, 1) for v in values_on_basis):
        raise ValueError("quadratic values must be 0 or 1")
    change = BitMatrix.from_columns(list(basis), n) if n else BitMatrix.zeros(0, 0)
    if change.rank() != n:
        raise ValueError("given vectors do not form a basis")
    inv = change.inverse()
    # in basis coordinates the form is change^T G change with the given values
    local = QuadraticSpace(change.T @ gram @ change, BitVector.from_list(values_on_basis))
    space = local.transported(inv)
    assert space.gram == gram
    return space


def arf(space: QuadraticSpace) -> int:
    """sum q(a_i) q(b_i) over a symplectic basis."""
    total = 0
    for a, b in symplectic_basis(space.gram):
        total ^= space.q(a) & space.q(b)
    return total


def arf_count_oracle(space: QuadraticSpace) -> int:
    """Arf by counting zeros of q over all 2^dim vectors."""
    n = space.dim
    if n > 24:
        raise ValueError("enumeration limited to dim <= 24")
    if n % 2:
        raise ValueError("odd dimension")
    g = n // 2
    # Gray-code walk: flipping bit i changes q by q_i + sum_{j != i} x_j G_ij
    rows = space.gram.data
    qv = space.values.bits
    x = 0
    val = 0
    zeros = 1
    for k in range(1, 1 << n):
        i = (k & -k).bit_length() - 1
        val ^= ((qv >> i) & 1) ^ (bin(rows[i] & x & ~(1 << i)).count("1") & 1)
        x ^= 1 << i
        zeros += not val
    if g == 0:
        return 0
    if zeros == 2 ** (n - 1) + 2 ** (g - 1):
        return 0
    if zeros == 2 ** (n - 1) - 2 ** (g - 1):
        return 1
    raise RefinementError(f"{zeros} zeros out of {2 ** n}: not a nondegenerate quadratic refinement")


def hyperbolic_gram(g: int) -> BitMatrix:
    """Standard form with pairs (e_{2i}, e_{2i+1})."""
    rows = []
    for i in range(2 * g):
        rows.append(1 << (i ^ 1))
    return BitMatrix(2 * g, 2 * g, tuple(rows))


def arf_from_pairs(pair_values: Sequence[tuple[int, int]]) -> int:
    """Arf of q on an orthogonal sum of hyperbolic planes given (q(a_i), q(b_i))."""
    vals = [v for pair in pair_values for v in pair]
    space = QuadraticSpace(hyperbolic_gram(len(pair_values)), BitVector.from_list(vals))
    return arf(space)


def change_of_basis_symplectic(gram: BitMatrix) -> BitMatrix:
    """Matrix whose columns are a symplectic basis (a_1, b_1, a_2, b_2, ...)."""
    cols = [v for pair in symplectic_basis(gram) for v in pair]
    return BitMatrix.from_columns(cols, gram.rows)


def solve_coordinates(basis: Sequence[BitVector], v: BitVector) -> BitVector | None:
    if not basis:
        return BitVector.zeros(0) if v.is_zero() else None
    return solve(BitMatrix.from_columns(list(basis), v.length), v)


def random_quadratic_space(rng, g: int) -> QuadraticSpace:
    """Random refinement of a random nondegenerate alternating form of rank 2g."""
    n = 2 * g
    if n == 0:
        return QuadraticSpace(BitMatrix.zeros(0, 0), BitVector.zeros(0))
    while True:
        M = BitMatrix.from_lists([[rng.randint(0, 1) for _ in range(n)] for _ in range(n)])
        if M.is_invertible():
            break
    gram = M.T @ hyperbolic_gram(g) @ M
    return QuadraticSpace(gram, BitVector.from_list([rng.randint(0, 1) for _ in range(n)]))
