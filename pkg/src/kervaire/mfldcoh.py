"""Mod 2 cohomology of products of projective spaces, double covers and mapping tori.

Double covers are handled by the Gysin sequence of the 0-sphere bundle,

    ... -> H^{k-1}(B) --pi--> H^k(B) --p*--> H^k(L) --> H^k(B) --pi--> H^{k+1}(B) -> ...

and mapping tori by the Wang sequence with monodromy theta,

    H_n(T) = coker(theta + 1 on H_n(F)) + ker(theta + 1 on H_{n-1}(F)).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .f2core import BitMatrix, BitVector, DimensionError, complement_basis, kernel_basis, rank, solve, span_reduce
from .report import Check, compare, hard, hard_equal, note

Element = frozenset  # of exponent tuples


@dataclass(frozen=True)
class TruncatedRing:
    """F2[t_1, ..., t_k] / (t_i^{n_i + 1}); ``tops`` holds the n_i."""

    tops: tuple[int, ...]
    _bases: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @classmethod
    def projective(cls, *dims: int) -> "TruncatedRing":
        """H^*(RP^{n_1} x ... x RP^{n_k})."""
        return cls(tuple(dims))

    @property
    def nvars(self) -> int:
        return len(self.tops)

    @property
    def top_degree(self) -> int:
        return sum(self.tops)

    def basis(self, d: int) -> list[tuple[int, ...]]:
        """Monomials of degree d in lexicographic order."""
        if d not in self._bases:
            if d < 0 or d > self.top_degree:
                out = []
            else:
                out = [e for e in product(*(range(n + 1) for n in self.tops)) if sum(e) == d]
            self._bases[d] = out
        return self._bases[d]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def betti(self) -> list[int]:
        return [self.dim(d) for d in range(self.top_degree + 1)]

    def reduce(self, elem) -> Element:
        out: set = set()
        for e in elem:
            if len(e) != self.nvars:
                raise DimensionError(f"exponent {e} does not have {self.nvars} entries")
            if all(0 <= x <= n for x, n in zip(e, self.tops)):
                out ^= {tuple(e)}
        return frozenset(out)

    def gen(self, i: int) -> Element:
        e = [0] * self.nvars
        e[i] = 1
        return self.reduce({tuple(e)})

    def one(self) -> Element:
        return frozenset({(0,) * self.nvars})

    def mul(self, x: Element, y: Element) -> Element:
        out: set = set()
        for a in x:
            for b in y:
                c = tuple(p + q for p, q in zip(a, b))
                if all(v <= n for v, n in zip(c, self.tops)):
                    out ^= {c}
        return frozenset(out)

    def power(self, x: Element, k: int) -> Element:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def add(self, x: Element, y: Element) -> Element:
        return frozenset(set(x) ^ set(y))

    def degree(self, x: Element) -> int:
        degs = {sum(e) for e in x}
        if len(degs) != 1:
            raise ValueError(f"element is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def to_vector(self, x: Element, d: int) -> BitVector:
        basis = self.basis(d)
        index = {e: i for i, e in enumerate(basis)}
        bits = 0
        for e in x:
            if sum(e) != d:
                raise ValueError(f"monomial {e} not in degree {d}")
            bits ^= 1 << index[e]
        return BitVector(len(basis), bits)

    def from_vector(self, v: BitVector, d: int) -> Element:
        basis = self.basis(d)
        return frozenset(basis[i] for i in v.support())

    def parse(self, text: str) -> Element:
        """Parse ``"t1 + t2"``, ``"t1^3 t2"``, ``"1"``, ``"0"``."""
        text = text.strip()
        if text == "0":
            return frozenset()
        acc: set = set()
        for term in text.split("+"):
            e = [0] * self.nvars
            term = term.strip()
            if term != "1":
                for tok in term.replace("*", " ").split():
                    m = re.fullmatch(r"t(\d+)(?:\^(\d+))?", tok)
                    if not m:
                        raise ValueError(f"cannot parse ring monomial {tok!r}")
                    i = int(m.group(1)) - 1
                    if not 0 <= i < self.nvars:
                        raise ValueError(f"variable t{i + 1} out of range")
                    e[i] += int(m.group(2) or 1)
            acc ^= {tuple(e)}
        return self.reduce(acc)

    def format(self, x: Element) -> str:
        if not x:
            return "0"
        terms = []
        for e in sorted(x, reverse=True):
            parts = [f"t{i + 1}" if n == 1 else f"t{i + 1}^{n}" for i, n in enumerate(e) if n]
            terms.append(" ".join(parts) or "1")
        return " + ".join(terms)

    def permute_variables(self, x: Element, perm: Sequence[int]) -> Element:
        """Send t_i to t_{perm[i]}."""
        out: set = set()
        for e in x:
            f = [0] * self.nvars
            for i, v in enumerate(e):
                f[perm[i]] = v
            out ^= {tuple(f)}
        return self.reduce(out)


def cup_multiplication_matrix(R: TruncatedRing, c: Element, d: int) -> BitMatrix:
    """Matrix of x -> c x from degree d to degree d + deg(c)."""
    if not c:
        raise ValueError("zero class has no degree; pass a nonzero homogeneous element")
    k = R.degree(c)
    src, dst = R.basis(d), R.dim(d + k)
    cols = [R.to_vector(R.mul(c, frozenset({e})), d + k) for e in src]
    if not cols:
        return BitMatrix.zeros(dst, 0)
    return BitMatrix.from_columns(cols, dst)


def _mult_ranks(R: TruncatedRing, pi: Element) -> list[int]:
    top = R.top_degree
    if not pi:
        return [0] * (top + 1)
    return [rank(cup_multiplication_matrix(R, pi, k)) for k in range(top + 1)]


def gysin_betti(dims: Sequence[int], mult_ranks: Sequence[int]) -> list[int]:
    """dim H^k(L) = (dim B^k - rank_k) + (dim B^k - rank_{k-1}), rank_k of B^k -> B^{k+1}."""
    out = []
    for k, d in enumerate(dims):
        ker = d - mult_ranks[k]
        coker = d - (mult_ranks[k - 1] if k else 0)
        out.append(ker + coker)
    return out


def double_cover_betti(R: TruncatedRing, pi: Element) -> list[int]:
    """Betti numbers of the double cover with characteristic class ``pi``."""
    if pi and R.degree(pi) != 1:
        raise ValueError("characteristic class of a double cover has degree 1")
    return gysin_betti(R.betti(), _mult_ranks(R, pi))


@dataclass(frozen=True)
class QuotientValue:
    """u^k reduced modulo the ideal (pi) in its degree."""

    ring: TruncatedRing
    degree: int
    power: Element  # u^k in R
    reduced: Element  # canonical representative modulo pi * R

    @property
    def is_zero(self) -> bool:
        return not self.reduced


def pullback_power_evaluate(R: TruncatedRing, pi: Element, u: Element, k: int) -> QuotientValue:
    """u^k in R/(pi R); zero certifies <p*(u)^k, [L]> = 0 on the double cover.

    Exactness of the Gysin sequence gives ker p* = pi R.
    """
    if R.degree(pi) != 1:
        raise ValueError("pi must have degree 1")
    power = R.power(u, k)
    if not u:
        return QuotientValue(R, 0, power, frozenset())
    deg = R.degree(u) * k
    if deg > R.top_degree:
        return QuotientValue(R, deg, frozenset(), frozenset())
    image = cup_multiplication_matrix(R, pi, deg - 1).column_vectors() if deg >= 1 else []
    vec = span_reduce(image, R.to_vector(power, deg))
    return QuotientValue(R, deg, power, R.from_vector(vec, deg))


@dataclass(frozen=True)
class MonodromyData:
    """Fiber homology dimensions and the monodromy matrix in each degree."""

    maps: Mapping[int, BitMatrix]

    def __post_init__(self):
        for d, m in self.maps.items():
            if d < 0:
                raise ValueError("negative degree")
            if m.rows != m.cols:
                raise DimensionError(f"monodromy in degree {d} is not square")
            if not m.is_invertible():
                raise ValueError(f"monodromy in degree {d} is not invertible")

    @property
    def top(self) -> int:
        return max((d for d, m in self.maps.items() if m.rows), default=0)

    def dim(self, d: int) -> int:
        m = self.maps.get(d)
        return m.rows if m is not None else 0

    def fiber_betti(self) -> list[int]:
        return [self.dim(d) for d in range(self.top + 1)]


def wang_betti(m: MonodromyData) -> list[int]:
    """Betti numbers of the mapping torus, degrees 0..top+1."""
    out = []
    for n in range(m.top + 2):
        coker = 0
        ker = 0
        if n in m.maps and m.maps[n].rows:
            t = m.maps[n] + BitMatrix.identity(m.maps[n].rows)
            coker = t.rows - rank(t)
        if n - 1 in m.maps and m.maps[n - 1].rows:
            t = m.maps[n - 1] + BitMatrix.identity(m.maps[n - 1].rows)
            ker = t.cols - rank(t)
        out.append(coker + ker)
    return out


def sphere_product_monodromy(dims: Sequence[int], perm: Sequence[int]) -> MonodromyData:
    """Fiber S^{d_1} x ... x S^{d_k}, monodromy permuting factors (mod 2 degrees ignored)."""
    k = len(dims)
    if sorted(perm) != list(range(k)):
        raise ValueError("perm must permute the factors")
    if any(dims[i] != dims[perm[i]] for i in range(k)):
        raise ValueError("can only permute spheres of equal dimension")
    cells: dict[int, list[frozenset]] = {}
    for mask in range(1 << k):
        s = frozenset(i for i in range(k) if mask >> i & 1)
        cells.setdefault(sum(dims[i] for i in s), []).append(s)
    maps = {}
    for d, cs in cells.items():
        cs.sort(key=sorted)
        index = {c: i for i, c in enumerate(cs)}
        maps[d] = BitMatrix.permutation([index[frozenset(perm[i] for i in c)] for c in cs])
    return MonodromyData(maps)


def ring_monodromy(R: TruncatedRing, perm: Sequence[int]) -> MonodromyData:
    """Monodromy on (co)homology of a product of projective spaces permuting variables."""
    maps = {}
    for d in range(R.top_degree + 1):
        basis = R.basis(d)
        index = {e: i for i, e in enumerate(basis)}
        images = []
        for e in basis:
            (f,) = R.permute_variables(frozenset({e}), perm)
            images.append(index[f])
        maps[d] = BitMatrix.permutation(images)
    return MonodromyData(maps)


def _invariants(theta: BitMatrix) -> list[BitVector]:
    return kernel_basis(theta + BitMatrix.identity(theta.rows))


def mapping_torus_cover_betti(R: TruncatedRing, perm: Sequence[int], pi: Element) -> list[int]:
    """Additive model for the double cover of the mapping torus of a variable swap.

    H^k of the torus is modelled as coinv(H^{k-1}) + inv(H^k) with multiplication
    by the invariant class ``pi`` acting on each summand separately; extension
    data between the two summands is not modelled.
    """
    if R.degree(pi) != 1:
        raise ValueError("pi must have degree 1")
    if R.permute_variables(pi, perm) != pi:
        raise ValueError("pi must be invariant under the monodromy")
    mono = ring_monodromy(R, perm)
    top = R.top_degree
    ident = lambda d: BitMatrix.identity(R.dim(d))

    inv = {d: _invariants(mono.maps[d]) for d in range(top + 1)}
    moved = {d: (mono.maps[d] + ident(d)).column_vectors() for d in range(top + 1)}
    coinv = {
        d: complement_basis(moved[d], [BitVector.unit(R.dim(d), i) for i in range(R.dim(d))])
        for d in range(top + 1)
    }

    def inv_rank(d: int) -> int:
        if d + 1 > top or not inv[d]:
            return 0
        M = cup_multiplication_matrix(R, pi, d)
        cols = [solve(BitMatrix.from_columns(inv[d + 1], R.dim(d + 1)), M.apply(v)) for v in inv[d]]
        assert all(c is not None for c in cols)
        return rank(BitMatrix.from_columns(cols, len(inv[d + 1])))

    def coinv_rank(d: int) -> int:
        if d + 1 > top or not coinv[d]:
            return 0
        M = cup_multiplication_matrix(R, pi, d)
        images = [M.apply(v) for v in coinv[d]]
        # rank of the induced map into H^{d+1} / moved
        return rank(BitMatrix.from_columns(images + moved[d + 1], R.dim(d + 1))) - rank(
            BitMatrix.from_columns(moved[d + 1], R.dim(d + 1))
        ) if moved[d + 1] else rank(BitMatrix.from_columns(images, R.dim(d + 1)))

    dims, ranks = [], []
    for k in range(top + 2):
        dims.append((len(coinv[k - 1]) if k >= 1 else 0) + (len(inv[k]) if k <= top else 0))
        ranks.append((coinv_rank(k - 1) if k >= 1 else 0) + (inv_rank(k) if k <= top else 0))
    return gysin_betti(dims, ranks)


def is_palindromic(betti: Sequence[int]) -> bool:
    return list(betti) == list(reversed(betti))


def euler_characteristic(betti: Sequence[int]) -> int:
    return sum((-1) ** k * b for k, b in enumerate(betti))


# the characteristic-number reduction of the 15-dimensional computation

STATED_PL = "stated: <p_L^14,[L]> vanishes"
STATED_EQUIV = "stated: the two characteristic-number equations are equivalent"
STATED_TARGET = "stated: <p_N^14 (p_N + kappa_N),[N]> = 1"
STATED_THETA = "stated: the immersion self-intersects in an odd number of points"
LEMMA_INPUT = "geometric input: degree of the section map is 1 (not recomputed)"


@dataclass(frozen=True)
class ReductionReport:
    lemma_input: int
    correction_term: int
    quotient_value: QuotientValue
    top_power: int  # <p_N^15,[N]>
    target: int  # <p_N^14 (p_N + kappa_N),[N]>
    theta: int
    steps: tuple[tuple[str, str, str], ...]  # (statement, value, provenance)


def rp7_square_ring() -> TruncatedRing:
    return TruncatedRing.projective(7, 7)


def char_number_reduction_report(lemma_input: int = 1) -> ReductionReport:
    """Reduce <p_N^14 (p_N + kappa_N), [N]> to <p_N^15, [N]> (taken from the degree lemma)."""
    if lemma_input not in (0, 1):
        raise ValueError("lemma input must be 0 or 1")
    R = rp7_square_ring()
    pi = R.parse("t1 + t2")
    qv = pullback_power_evaluate(R, pi, R.parse("t1"), 14)
    correction = 0 if qv.is_zero else 1
    top_power = lemma_input
    target = top_power ^ correction
    steps = (
        (
            "<p_N^14 (p_N + kappa_N),[N]> = <p_N^15,[N]> + <p_N^14 kappa_N,[N]>",
            "linearity",
            "expansion",
        ),
        (
            "<p_N^14 kappa_N,[N]> = <p_L^14,[L]> (kappa_N dual to the fiber L)",
            "geometric identification",
            "modelling input",
        ),
        (
            "<p_L^14,[L]> = class of t1^14 in H^*(RP7 x RP7)/(t1 + t2)",
            R.format(qv.reduced),
            "computed: quotient-ring normal form",
        ),
        ("<p_N^15,[N]>", str(top_power), LEMMA_INPUT),
        ("<p_N^14 (p_N + kappa_N),[N]>", str(target), "derived"),
        ("theta", str(target), "derived"),
    )
    return ReductionReport(lemma_input, correction, qv, top_power, target, target, steps)


def section5_checks(lemma_input: int = 1) -> list[Check]:
    """Recompute the finite facts about M^15, K^15, L^14 and N^15."""
    checks: list[Check] = []
    R = rp7_square_ring()
    pi = R.parse("t1 + t2")

    m15 = wang_betti(sphere_product_monodromy([7, 7], [1, 0]))
    checks.append(hard_equal("M15 Betti numbers (Wang)", m15, [1, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 1],
                             "oracle: kernel/cokernel of swap + 1"))
    checks.append(hard_equal("M15 H_15 dimension", m15[15], 1, "oracle: Wang sequence"))
    checks.append(hard("M15 Betti palindromic", is_palindromic(m15), m15, "palindromic", "Poincare duality mod 2"))

    k15 = wang_betti(ring_monodromy(R, [1, 0]))
    checks.append(hard_equal("K15 H_1 dimension", k15[1], 2, "oracle: swap on degree-1 classes"))
    checks.append(hard("K15 Betti palindromic", is_palindromic(k15), k15, "palindromic", "Poincare duality mod 2"))

    l14 = double_cover_betti(R, pi)
    checks.append(hard("L14 Betti (Gysin)", l14[0] == 1 and l14[14] == 1, l14, "b0 = b14 = 1",
                       "oracle: kernel/cokernel of multiplication by t1 + t2"))
    checks.append(hard("L14 Betti palindromic", is_palindromic(l14), l14, "palindromic", "Poincare duality mod 2"))
    checks.append(hard_equal("L14 Euler characteristic", euler_characteristic(l14), 2 * euler_characteristic(R.betti()),
                             "double cover multiplies Euler characteristic by 2"))

    n15 = mapping_torus_cover_betti(R, [1, 0], pi)
    checks.append(note("N15 Betti (additive model)", n15, "additive model; extension data not modelled"))
    checks.append(note("N15 Betti palindromic (additive model)", is_palindromic(n15), "additive model"))

    rep = char_number_reduction_report(lemma_input)
    checks.append(compare("<p_L^14,[L]>", 0 if rep.quotient_value.is_zero else 1, 0, STATED_PL))
    checks.append(hard_equal("<p_L^7,[L]> class in quotient is nonzero",
                             not pullback_power_evaluate(R, pi, R.parse("t1"), 7).is_zero, True,
                             "oracle: R/(t1+t2) = F2[t]/(t^8)"))
    checks.append(compare("correction term <p_N^14 kappa_N,[N]>", rep.correction_term, 0, STATED_EQUIV))
    checks.append(note("<p_N^15,[N]> (degree lemma input)", rep.top_power, LEMMA_INPUT))
    checks.append(compare("<p_N^14 (p_N + kappa_N),[N]>", rep.target, 1, STATED_TARGET))
    checks.append(compare("theta(phi, kappa, Psi)", rep.theta, 1, STATED_THETA))
    return checks
