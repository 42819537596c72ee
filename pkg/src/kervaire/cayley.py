"""Octonions over the rationals and the neutrality homotopy of V_{7,2}.

F(t, e1) fixes e1 and multiplies its orthogonal complement in the imaginary
octonions on the left by cos(t pi) + e1 sin(t pi).  F(0) is the identity and
F(1) negates the complement, so (e1, e2) -> (e1, F(t, e1) e2) joins the
identity of V_{7,2} to the involution (e1, e2) -> (e1, -e2).
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

Scalar = Fraction | float


@lru_cache(maxsize=None)
def fano_triples() -> tuple[tuple[int, int, int], ...]:
    doc = json.loads(resources.files("kervaire.data").joinpath("fano.json").read_text())
    return tuple(tuple(t) for t in doc["triples"])


@lru_cache(maxsize=None)
def structure_constants() -> tuple[tuple[tuple[int, int], ...], ...]:
    """table[i][j] = (sign, k) with e_i e_j = sign e_k, indices 0..7 and e_0 = 1."""
    prod: dict[tuple[int, int], tuple[int, int]] = {}
    for i, j, k in fano_triples():
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            prod[a, b] = (1, c)
            prod[b, a] = (-1, c)
    rows = []
    for i in range(8):
        row = []
        for j in range(8):
            if i == 0:
                row.append((1, j))
            elif j == 0:
                row.append((1, i))
            elif i == j:
                row.append((-1, 0))
            else:
                row.append(prod[i, j])
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class Octonion:
    coords: tuple  # 8 entries, Fractions (exact) or floats

    def __post_init__(self):
        if len(self.coords) != 8:
            raise ValueError("an octonion has 8 coordinates")

    @classmethod
    def unit(cls, i: int) -> "Octonion":
        return cls(tuple(Fraction(int(k == i)) for k in range(8)))

    @classmethod
    def one(cls) -> "Octonion":
        return cls.unit(0)

    @classmethod
    def imaginary(cls, v: Sequence[Scalar]) -> "Octonion":
        if len(v) != 7:
            raise ValueError("imaginary part has 7 coordinates")
        return cls((Fraction(0) if isinstance(v[0], Fraction) else 0.0,) + tuple(v))

    @property
    def real(self) -> Scalar:
        return self.coords[0]

    @property
    def imag(self) -> tuple:
        return self.coords[1:]

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Octonion":
        return Octonion(tuple(-a for a in self.coords))

    def scale(self, c: Scalar) -> "Octonion":
        return Octonion(tuple(c * a for a in self.coords))

    def __mul__(self, other: "Octonion") -> "Octonion":
        return multiply(self, other)

    def conjugate(self) -> "Octonion":
        return Octonion((self.coords[0],) + tuple(-a for a in self.coords[1:]))

    def norm2(self) -> Scalar:
        return sum(a * a for a in self.coords)

    def dot(self, other: "Octonion") -> Scalar:
        return sum(a * b for a, b in zip(self.coords, other.coords))


def multiply(x: Octonion, y: Octonion) -> Octonion:
    table = structure_constants()
    out = [x.coords[0] * 0] * 8
    for i, xi in enumerate(x.coords):
        if not xi:
            continue
        row = table[i]
        for j, yj in enumerate(y.coords):
            if yj:
                s, k = row[j]
                out[k] += s * xi * yj
    return Octonion(tuple(out))


Matrix = list[list[Scalar]]


def _exact_trig(t) -> tuple[Fraction, Fraction] | None:
    """cos(t pi), sin(t pi) when 2t is an integer."""
    t = Fraction(t)
    if (2 * t).denominator != 1:
        return None
    quarter = int(2 * t) % 4
    return [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)),
            (Fraction(-1), Fraction(0)), (Fraction(0), Fraction(-1))][quarter]


def neutrality_operator(t, axis: Octonion, exact: bool | None = None) -> Matrix:
    """7x7 matrix of F(t, axis) on the imaginary octonions (columns are images of e_1..e_7).

    Exact rational arithmetic is used when 2t is an integer and the axis is
    rational; otherwise floats.
    """
    trig = _exact_trig(t)
    rational_axis = all(isinstance(c, (Fraction, int)) for c in axis.coords)
    if exact is None:
        exact = trig is not None and rational_axis
    if exact and (trig is None or not rational_axis):
        raise ValueError("exact mode needs 2t integral and a rational axis")
    if axis.real:
        raise ValueError("axis must be imaginary")
    n2 = axis.norm2()
    if exact:
        if n2 != 1:
            raise ValueError(f"axis is not a unit vector (norm^2 = {n2})")
        c, s = trig
        ax = axis
    else:
        if abs(float(n2) - 1.0) > 1e-12:
            raise ValueError(f"axis is not a unit vector (norm^2 = {float(n2)})")
        c, s = math.cos(float(t) * math.pi), math.sin(float(t) * math.pi)
        if trig is not None:
            c, s = float(trig[0]), float(trig[1])
        ax = Octonion(tuple(float(a) for a in axis.coords))
    cols = []
    for i in range(1, 8):
        v = Octonion.unit(i) if exact else Octonion(tuple(float(k == i) for k in range(8)))
        along = ax.scale(v.dot(ax))
        perp = v - along
        img = along + perp.scale(c) + multiply(ax, perp).scale(s)
        assert not img.real or not exact
        cols.append(list(img.imag))
    return [[cols[j][i] for j in range(7)] for i in range(7)]


def apply_matrix(m: Matrix, v: Sequence[Scalar]) -> list[Scalar]:
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def _gram_deviation(m: Matrix) -> float:
    dev = 0.0
    for i in range(7):
        for j in range(7):
            s = sum(m[k][i] * m[k][j] for k in range(7))
            dev = max(dev, abs(float(s) - (1.0 if i == j else 0.0)))
    return dev


def rational_unit_vector(rng: random.Random, n: int, bound: int = 9) -> list[Fraction]:
    """Inverse stereographic image of a random rational point: exactly unit length."""
    while True:
        y = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n - 1)]
        s = sum(c * c for c in y)
        v = [2 * c / (1 + s) for c in y] + [(s - 1) / (1 + s)]
        if any(v):
            return v


def random_orthonormal_pair(rng: random.Random) -> tuple[Octonion, Octonion]:
    """Exactly orthonormal rational imaginary octonions (e1, e2).

    e2 starts in the complement of the first coordinate axis and both are
    carried by the reflection swapping that axis with a random unit e1.
    """
    u = rational_unit_vector(rng, 7)
    w = [Fraction(0)] + rational_unit_vector(rng, 6)
    first = [Fraction(int(i == 0)) for i in range(7)]
    d = [a - b for a, b in zip(first, u)]
    dd = sum(c * c for c in d)
    if dd == 0:
        e2 = w
    else:
        k = 2 * sum(a * b for a, b in zip(d, w)) / dd
        e2 = [a - k * b for a, b in zip(w, d)]
    e1, e2 = Octonion.imaginary(u), Octonion.imaginary(e2)
    assert e1.norm2() == 1 and e2.norm2() == 1 and e1.dot(e2) == 0
    return e1, e2


@dataclass(frozen=True)
class NeutralityReport:
    grid: tuple[Fraction, ...]
    samples: int
    seed: int
    mode: str  # exact, float or mixed
    max_norm_deviation: float
    max_orthogonality_deviation: float  # |<F e2, e1>|
    max_matrix_deviation: float  # entries of F^T F - I
    max_axis_deviation: float  # |F e1 - e1|
    start_is_identity: bool
    end_is_involution: bool
    tolerance: float = 1e-12

    @property
    def ok(self) -> bool:
        return (
            max(self.max_norm_deviation, self.max_orthogonality_deviation,
                self.max_matrix_deviation, self.max_axis_deviation) <= self.tolerance
            and self.start_is_identity and self.end_is_involution
        )


def verify_neutrality(grid_size: int = 11, samples: int = 100, seed: int = 0) -> NeutralityReport:
    if grid_size < 2:
        raise ValueError("grid size must be at least 2")
    rng = random.Random(seed)
    grid = tuple(Fraction(k, grid_size - 1) for k in range(grid_size))
    pairs = [random_orthonormal_pair(rng) for _ in range(samples)]
    modes = set()
    dn = do = dm = da = 0.0
    start_ok = end_ok = True
    for e1, e2 in pairs:
        for t in grid:
            exact = _exact_trig(t) is not None
            modes.add("exact" if exact else "float")
            m = neutrality_operator(t, e1, exact=exact)
            img = apply_matrix(m, e2.imag if exact else [float(c) for c in e2.imag])
            ax_img = apply_matrix(m, e1.imag if exact else [float(c) for c in e1.imag])
            dn = max(dn, abs(float(sum(c * c for c in img)) - 1.0))
            do = max(do, abs(float(sum(a * b for a, b in zip(img, e1.imag)))))
            dm = max(dm, _gram_deviation(m))
            da = max(da, max(abs(float(a - b)) for a, b in zip(ax_img, e1.imag)))
            if t == 0:
                start_ok &= exact and list(img) == list(e2.imag)
            if t == 1:
                end_ok &= exact and list(img) == [-c for c in e2.imag]
    mode = modes.pop() if len(modes) == 1 else "mixed"
    return NeutralityReport(grid, samples, seed, mode, dn, do, dm, da, start_ok, end_ok)


def random_rational_octonion(rng: random.Random, bound: int = 12) -> Octonion:
    return Octonion(tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(8)))


def check_norm_multiplicativity(samples: int = 1000, seed: int = 0) -> int:
    """Number of exact failures of |xy|^2 = |x|^2 |y|^2 and (-x)y = -(xy)."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        x, y = random_rational_octonion(rng), random_rational_octonion(rng)
        xy = multiply(x, y)
        if xy.norm2() != x.norm2() * y.norm2():
            bad += 1
        elif multiply(-x, y) != -xy:
            bad += 1
    return bad
