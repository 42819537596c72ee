"""The mod 2 Steenrod algebra in the Serre-Cartan basis.

Sums are frozensets of exponent tuples; a tuple (i1, ..., ik) stands for
Sq^i1 ... Sq^ik and the empty tuple is the unit.  Polynomials in degree-one
classes t_1..t_k are frozensets of exponent tuples as well.
"""
from __future__ import annotations

import random
import re
from functools import lru_cache
from typing import Iterable

Monomial = tuple[int, ...]
SteenrodSum = frozenset  # of Monomial
PolyElement = frozenset  # of exponent tuples


def binom2(n: int, k: int) -> int:
    """binom(n, k) mod 2 by Lucas: odd iff the bits of k are a subset of those of n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return int(k & ~n == 0)


def monomial(*exps: int) -> Monomial:
    return normalize_monomial(exps)


def normalize_monomial(exps: Iterable[int]) -> Monomial:
    out = []
    for e in exps:
        if e < 0:
            raise ValueError("negative Steenrod exponent")
        if e:
            out.append(e)
    return tuple(out)


def ssum(*monos: Iterable[int]) -> SteenrodSum:
    acc: set = set()
    for m in monos:
        acc ^= {normalize_monomial(m)}
    return frozenset(acc)


def degree(m: Monomial) -> int:
    return sum(m)


def is_admissible(m: Monomial) -> bool:
    return all(m[k] >= 2 * m[k + 1] for k in range(len(m) - 1))


def excess(m: Monomial) -> int:
    return sum(m[k] - 2 * m[k + 1] for k in range(len(m) - 1)) + (m[-1] if m else 0)


def adem(a: int, b: int) -> SteenrodSum:
    """Sq^a Sq^b for 0 < a < 2b as a sum of admissible pairs."""
    if not 0 < a < 2 * b:
        raise ValueError(f"Adem relation needs 0 < a < 2b, got a={a}, b={b}")
    terms: set = set()
    for c in range(a // 2 + 1):
        if binom2(b - c - 1, a - 2 * c):
            terms ^= {normalize_monomial((a + b - c, c))}
    return frozenset(terms)


@lru_cache(maxsize=None)
def _rewrite_monomial(m: Monomial) -> SteenrodSum:
    for k in range(len(m) - 1):
        if m[k] < 2 * m[k + 1]:
            out: set = set()
            for pair in adem(m[k], m[k + 1]):
                for term in _rewrite_monomial(normalize_monomial(m[:k] + pair + m[k + 2:])):
                    out ^= {term}
            return frozenset(out)
    return frozenset({m})


def adem_rewrite(s: SteenrodSum) -> SteenrodSum:
    """Admissible normal form, rewriting the leftmost inadmissible pair first."""
    out: set = set()
    for m in s:
        out ^= _rewrite_monomial(normalize_monomial(m))
    return frozenset(out)


def multiply(x: SteenrodSum, y: SteenrodSum) -> SteenrodSum:
    out: set = set()
    for a in x:
        for b in y:
            out ^= {a + b}
    return adem_rewrite(frozenset(out))


def admissible_basis(deg: int) -> list[Monomial]:
    """All admissible monomials of the given degree, in lexicographic order."""
    out: list[Monomial] = []

    def rec(prefix: list[int], remaining: int, cap: int):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for i in range(min(cap, remaining), 0, -1):
            prefix.append(i)
            rec(prefix, remaining - i, i // 2)
            prefix.pop()

    if deg == 0:
        return [()]
    rec([], deg, deg)
    return sorted(out)


def kervaire_relation_lhs(j: int, start_index: int = 0) -> SteenrodSum:
    """Sq^{2^j} Sq^{2^j} + sum_{i=start}^{j-1} Sq^{2^{j+1} - 2^i} Sq^{2^i}."""
    if start_index not in (0, 1):
        raise ValueError("start_index must be 0 or 1")
    acc: set = {(2 ** j, 2 ** j)}
    for i in range(start_index, j):
        acc ^= {normalize_monomial((2 ** (j + 1) - 2 ** i, 2 ** i))}
    return frozenset(acc)


def check_kervaire_relation(j: int, start_index: int = 0) -> SteenrodSum:
    """Admissible remainder of the relation; the empty sum means it holds."""
    if not 1 <= j <= 6:
        raise ValueError("j must lie in 1..6")
    return adem_rewrite(kervaire_relation_lhs(j, start_index))


# action on polynomial algebras


@lru_cache(maxsize=None)
def _sq_monomial(i: int, exps: tuple[int, ...]) -> frozenset:
    """Sq^i of t^exps by the Cartan formula and Sq^k(t^n) = binom(n, k) t^{n+k}."""
    if i == 0:
        return frozenset({exps})
    if not exps:
        return frozenset()
    head, tail = exps[0], exps[1:]
    out: set = set()
    for k in range(min(i, head) + 1):
        if not binom2(head, k):
            continue
        for rest in _sq_monomial(i - k, tail):
            out ^= {(head + k,) + rest}
    return frozenset(out)


def apply_sq(i: int, p: PolyElement) -> PolyElement:
    out: set = set()
    for e in p:
        if i <= sum(e):
            out ^= _sq_monomial(i, tuple(e))
    return frozenset(out)


def sq_on_polynomial(s: SteenrodSum, p: PolyElement) -> PolyElement:
    """Action of a Steenrod sum; Sq^i1 ... Sq^ik applies Sq^ik first."""
    out: set = set()
    for m in s:
        q = frozenset(p)
        for i in reversed(m):
            q = apply_sq(i, q)
            if not q:
                break
        out ^= q
    return frozenset(out)


def poly(*monos: Iterable[int]) -> PolyElement:
    acc: set = set()
    for m in monos:
        acc ^= {tuple(m)}
    return frozenset(acc)


# text syntax


def parse_sum(text: str) -> SteenrodSum:
    """Parse ``"Sq16 Sq16 + Sq31 Sq1"``; ``Sq^16`` and ``1`` are accepted too."""
    text = text.strip()
    if text in ("", "0"):
        return frozenset()
    acc: set = set()
    for term in text.split("+"):
        term = term.strip()
        if term == "1":
            acc ^= {()}
            continue
        exps = []
        for tok in term.replace("·", " ").replace("*", " ").split():
            m = re.fullmatch(r"Sq\^?\{?(\d+)\}?", tok)
            if not m:
                raise ValueError(f"cannot parse Steenrod monomial {term!r}")
            exps.append(int(m.group(1)))
        acc ^= {normalize_monomial(exps)}
    return frozenset(acc)


def format_monomial(m: Monomial) -> str:
    return " ".join(f"Sq{i}" for i in m) if m else "1"


def format_sum(s: SteenrodSum) -> str:
    if not s:
        return "0"
    # descending first exponent reads like the usual presentation of Adem sums
    return " + ".join(format_monomial(m) for m in sorted(s, reverse=True))


def format_poly(p: PolyElement) -> str:
    if not p:
        return "0"
    terms = []
    for e in sorted(p, reverse=True):
        parts = []
        for k, n in enumerate(e, start=1):
            if n == 1:
                parts.append(f"t{k}")
            elif n:
                parts.append(f"t{k}^{n}")
        terms.append(" ".join(parts) or "1")
    return " + ".join(terms)


# sampling used by the report and the tests


def random_monomial(rng, max_degree: int = 40, max_length: int = 4) -> Monomial:
    """A random (usually inadmissible) monomial of degree between 1 and max_degree."""
    length = rng.randint(1, max_length)
    total = rng.randint(length, max_degree)
    cuts = sorted(rng.sample(range(1, total), length - 1)) if length > 1 else []
    bounds = [0] + cuts + [total]
    return tuple(bounds[k + 1] - bounds[k] for k in range(length))


def random_polynomial(rng, nvars: int = 6, terms: int = 3, max_exp: int = 5) -> PolyElement:
    acc: set = set()
    for _ in range(terms):
        acc ^= {tuple(rng.randint(0, max_exp) for _ in range(nvars))}
    return frozenset(acc)


def faithfulness_failures(count: int = 500, max_degree: int = 40, nvars: int = 6, seed: int = 0) -> list[Monomial]:
    """Monomials whose action on a random polynomial changes under Adem rewriting."""
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        m = random_monomial(rng, max_degree)
        p = random_polynomial(rng, nvars)
        if sq_on_polynomial(frozenset({m}), p) != sq_on_polynomial(adem_rewrite(frozenset({m})), p):
            bad.append(m)
    return bad
