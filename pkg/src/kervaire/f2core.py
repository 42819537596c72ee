"""Exact linear algebra over GF(2).

Vectors and matrix rows are bit-packed into Python ints: bit ``i`` of the
integer holds coordinate ``i``.  Everything here is immutable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "BitVector",
    "BitMatrix",
    "DimensionError",
    "rank",
    "kernel_basis",
    "solve",
    "echelon",
    "span_reduce",
    "complement_basis",
]


class DimensionError(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise DimensionError("negative length")
        if self.bits >> self.length:
            raise DimensionError(f"bits set beyond length {self.length}")

    @classmethod
    def zeros(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def unit(cls, n: int, i: int) -> "BitVector":
        if not 0 <= i < n:
            raise IndexError(i)
        return cls(n, 1 << i)

    @classmethod
    def from_list(cls, values: Iterable[int]) -> "BitVector":
        bits = 0
        n = 0
        for n, v in enumerate(values, start=1):
            if v & 1:
                bits |= 1 << (n - 1)
        return cls(n, bits)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "BitVector":
        bits = 0
        for i in support:
            if not 0 <= i < n:
                raise IndexError(i)
            bits ^= 1 << i
        return cls(n, bits)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(f"coordinate {i} out of range for length {self.length}")
        return (self.bits >> i) & 1

    def __len__(self) -> int:
        return self.length

    def __iter__(self):
        return (self[i] for i in range(self.length))

    def _check(self, other: "BitVector") -> None:
        if self.length != other.length:
            raise DimensionError(f"length mismatch {self.length} vs {other.length}")

    def __add__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__
    __sub__ = __add__

    def dot(self, other: "BitVector") -> int:
        self._check(other)
        return _popcount(self.bits & other.bits) & 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def weight(self) -> int:
        return _popcount(self.bits)

    def support(self) -> list[int]:
        return [i for i in range(self.length) if (self.bits >> i) & 1]

    def to_list(self) -> list[int]:
        return list(self)

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(self.length + other.length, self.bits | (other.bits << self.length))

    def slice(self, start: int, stop: int) -> "BitVector":
        return BitVector(stop - start, (self.bits >> start) & ((1 << (stop - start)) - 1))

    def __str__(self) -> str:
        return "".join(str(b) for b in self)


@dataclass(frozen=True)
class BitMatrix:
    """Dense GF(2) matrix stored as a tuple of packed rows."""

    rows: int
    cols: int
    data: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.data and self.rows:
            object.__setattr__(self, "data", (0,) * self.rows)
        if len(self.data) != self.rows:
            raise DimensionError(f"expected {self.rows} rows, got {len(self.data)}")
        for r in self.data:
            if r >> self.cols:
                raise DimensionError(f"row has bits beyond {self.cols} columns")

    # construction

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = []
        for row in rows:
            if len(row) != cols:
                raise DimensionError("ragged matrix rows")
            data.append(BitVector.from_list(row).bits)
        return cls(len(rows), cols, tuple(data))

    @classmethod
    def from_rows(cls, vectors: Sequence[BitVector], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            if not vectors:
                raise DimensionError("cannot infer column count from no rows")
            cols = vectors[0].length
        for v in vectors:
            if v.length != cols:
                raise DimensionError("row length mismatch")
        return cls(len(vectors), cols, tuple(v.bits for v in vectors))

    @classmethod
    def from_columns(cls, vectors: Sequence[BitVector], rows: int | None = None) -> "BitMatrix":
        if rows is None:
            if not vectors:
                raise DimensionError("cannot infer row count from no columns")
            rows = vectors[0].length
        return cls.from_rows(vectors, rows).T if vectors else cls.zeros(rows, 0)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "BitMatrix":
        """Matrix sending e_i to e_{perm[i]}."""
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise ValueError(f"not a permutation: {perm}")
        data = [0] * n
        for i, j in enumerate(perm):
            data[j] |= 1 << i
        return cls(n, n, tuple(data))

    @classmethod
    def block_diag(cls, blocks: Sequence["BitMatrix"]) -> "BitMatrix":
        rows, cols, data = 0, 0, []
        for b in blocks:
            data.extend(r << cols for r in b.data)
            rows += b.rows
            cols += b.cols
        return cls(rows, cols, tuple(data))

    @classmethod
    def hstack(cls, blocks: Sequence["BitMatrix"]) -> "BitMatrix":
        rows = blocks[0].rows
        data = [0] * rows
        shift = 0
        for b in blocks:
            if b.rows != rows:
                raise DimensionError("hstack row mismatch")
            for i, r in enumerate(b.data):
                data[i] |= r << shift
            shift += b.cols
        return cls(rows, shift, tuple(data))

    @classmethod
    def vstack(cls, blocks: Sequence["BitMatrix"]) -> "BitMatrix":
        cols = blocks[0].cols
        data: list[int] = []
        for b in blocks:
            if b.cols != cols:
                raise DimensionError("vstack column mismatch")
            data.extend(b.data)
        return cls(len(data), cols, tuple(data))

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return (self.data[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.data[i])

    def column(self, j: int) -> BitVector:
        bits = 0
        for i, r in enumerate(self.data):
            if (r >> j) & 1:
                bits |= 1 << i
        return BitVector(self.rows, bits)

    def row_vectors(self) -> list[BitVector]:
        return [self.row(i) for i in range(self.rows)]

    def column_vectors(self) -> list[BitVector]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def __str__(self) -> str:
        return "\n".join("".join(str(x) for x in row) for row in self.to_lists())

    # arithmetic

    @property
    def T(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            j = 0
            while r:
                if r & 1:
                    out[j] |= 1 << i
                r >>= 1
                j += 1
        return BitMatrix(self.cols, self.rows, tuple(out))

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        return BitMatrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    __sub__ = __add__

    def apply(self, v: BitVector) -> BitVector:
        if v.length != self.cols:
            raise DimensionError(f"cannot apply {self.rows}x{self.cols} matrix to length {v.length}")
        bits = 0
        for i, r in enumerate(self.data):
            if _popcount(r & v.bits) & 1:
                bits |= 1 << i
        return BitVector(self.rows, bits)

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            return self.apply(other)
        if self.cols != other.rows:
            raise DimensionError(f"inner dimensions disagree: {self.shape} @ {other.shape}")
        out = []
        for r in self.data:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= other.data[j]
                r >>= 1
                j += 1
            out.append(acc)
        return BitMatrix(self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.data)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.T

    def diagonal(self) -> BitVector:
        n = min(self.rows, self.cols)
        return BitVector.from_list([self[i, i] for i in range(n)])

    def bilinear(self, x: BitVector, y: BitVector) -> int:
        """x^T M y."""
        return x.dot(self.apply(y))

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> "BitMatrix":
        if self.rows != self.cols:
            raise DimensionError("inverse of non-square matrix")
        n = self.rows
        aug = [self.data[i] | (1 << (n + i)) for i in range(n)]
        _, pivots = _rref(aug, n)
        if len(pivots) != n:
            raise ValueError("matrix is singular over GF(2)")
        mask = (1 << n) - 1
        return BitMatrix(n, n, tuple((aug[i] >> n) & mask for i in range(n)))

    def is_invertible(self) -> bool:
        return self.rows == self.cols and rank(self) == self.rows

    def power(self, k: int) -> "BitMatrix":
        if k < 0:
            return self.inverse().power(-k)
        out = BitMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out


def _rref(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduce ``rows`` in place to reduced row echelon form on the low ``ncols`` bits.

    Returns (rows, pivot_columns).  Pivot row ``k`` is ``rows[k]``.
    """
    pivots: list[int] = []
    r = 0
    m = len(rows)
    for c in range(ncols):
        bit = 1 << c
        p = next((i for i in range(r, m) if rows[i] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        for i in range(m):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def echelon(M: BitMatrix) -> tuple[BitMatrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows, pivots = _rref(list(M.data), M.cols)
    return BitMatrix(len(pivots), M.cols, tuple(rows[: len(pivots)])), pivots


def rank(M: BitMatrix) -> int:
    return len(_rref(list(M.data), M.cols)[1])


def kernel_basis(M: BitMatrix) -> list[BitVector]:
    """Basis of {v : Mv = 0}, one vector per free column in increasing order."""
    rows, pivots = _rref(list(M.data), M.cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        bits = 1 << f
        for k, p in enumerate(pivots):
            if (rows[k] >> f) & 1:
                bits |= 1 << p
        basis.append(BitVector(M.cols, bits))
    return basis


def solve(M: BitMatrix, b: BitVector) -> BitVector | None:
    """Some x with Mx = b (free variables zero), or None when inconsistent."""
    if b.length != M.rows:
        raise DimensionError(f"right-hand side has length {b.length}, matrix has {M.rows} rows")
    n = M.cols
    aug = [r | (((b.bits >> i) & 1) << n) for i, r in enumerate(M.data)]
    rows, pivots = _rref(aug, n)
    for r in rows[len(pivots):]:
        if r >> n:
            return None
    bits = 0
    for k, p in enumerate(pivots):
        if (rows[k] >> n) & 1:
            bits |= 1 << p
    x = BitVector(n, bits)
    assert M.apply(x) == b
    return x


class _Reducer:
    """Incremental echelon basis used to test membership and reduce vectors."""

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, int] = {}  # lowest set bit -> row

    def reduce(self, bits: int) -> int:
        # rows are fully reduced (each pivot occurs in one row only), so one
        # pass clears every pivot bit and the result is canonical
        for low, row in self.rows.items():
            if (bits >> low) & 1:
                bits ^= row
        return bits

    def add(self, bits: int) -> bool:
        bits = self.reduce(bits)
        if not bits:
            return False
        low = (bits & -bits).bit_length() - 1
        for k, row in list(self.rows.items()):
            if (row >> low) & 1:
                self.rows[k] = row ^ bits
        self.rows[low] = bits
        return True


def span_reduce(vectors: Sequence[BitVector], v: BitVector) -> BitVector:
    """Canonical representative of ``v`` modulo span(vectors)."""
    red = _Reducer(v.length)
    for u in vectors:
        red.add(u.bits)
    return BitVector(v.length, red.reduce(v.bits))


def complement_basis(subspace: Sequence[BitVector], space: Sequence[BitVector]) -> list[BitVector]:
    """Vectors of ``space`` (in order) that extend a basis of span(subspace).

    ``subspace`` must lie inside span(space).  The returned list represents a
    basis of the quotient span(space)/span(subspace).
    """
    if not space:
        return []
    red = _Reducer(space[0].length)
    for u in subspace:
        red.add(u.bits)
    return [v for v in space if red.add(v.bits)]
