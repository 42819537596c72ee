"""Free-group words, one-relator presentations and GF(2) representations."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..f2core import BitMatrix, DimensionError

Letter = tuple[str, int]

_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^\{?(-?\d+)\}?|(⁻¹))?")


class RelatorError(ValueError):
    """A representation does not send the relator to the identity."""


@dataclass(frozen=True)
class GroupWord:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Parse ``"a a b1 b2 b1^-1 b2^-1"``; also accepts ``a^2``, ``b⁻¹`` and ``*``/``·`` separators.

        ``"1"`` or an empty string is the empty word.
        """
        text = text.replace("*", " ").replace("·", " ").strip()
        if text in ("", "1"):
            return cls(())
        letters: list[Letter] = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse word at {text[pos:]!r}")
            name, exp, inv = m.groups()
            k = -1 if inv else int(exp) if exp is not None else 1
            if k == 0:
                raise ValueError(f"zero exponent in {text!r}")
            sign = 1 if k > 0 else -1
            letters.extend([(name, sign)] * abs(k))
            pos = m.end()
        return cls(tuple(letters))

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "GroupWord":
        return cls(((name, 1 if exp > 0 else -1),) * abs(exp))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def reduced(self) -> "GroupWord":
        out: list[Letter] = []
        for g, e in self.letters:
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        return GroupWord(tuple(out))

    def prefixes(self) -> list["GroupWord"]:
        """p_0 = 1, p_1, ..., p_n."""
        return [GroupWord(self.letters[:i]) for i in range(len(self.letters) + 1)]

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def cyclic_rotations(self) -> list["GroupWord"]:
        n = len(self.letters)
        return [GroupWord(self.letters[i:] + self.letters[:i]) for i in range(max(n, 1))]

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(g if e > 0 else f"{g}^-1" for g, e in self.letters)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relator: GroupWord

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        stray = self.relator.generators() - set(self.generators)
        if stray:
            raise ValueError(f"relator uses unknown generators {sorted(stray)}")

    @classmethod
    def parse(cls, generators: Sequence[str], relator: str) -> "Presentation":
        return cls(tuple(generators), GroupWord.parse(relator))

    @property
    def euler_characteristic(self) -> int:
        # one vertex, one edge per generator, one 2-cell
        return 2 - len(self.generators)

    def index(self, gen: str) -> int:
        return self.generators.index(gen)

    def __str__(self) -> str:
        return f"<{', '.join(self.generators)} | {self.relator}>"


def surface_presentation() -> Presentation:
    """Connected sum of a projective plane and a torus: a² [b1, b2] = 1."""
    return Presentation.parse(["a", "b1", "b2"], "a a b1 b2 b1^-1 b2^-1")


@dataclass(frozen=True)
class Representation:
    """Homomorphism from a presented group to GL(dim, GF(2))."""

    presentation: Presentation
    images: Mapping[str, BitMatrix]
    dim: int = field(init=False)
    _inverses: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = self.presentation.generators
        if set(self.images) != set(gens):
            raise ValueError(f"images given for {sorted(self.images)}, expected {list(gens)}")
        dims = {m.shape for m in self.images.values()}
        if len(dims) != 1:
            raise DimensionError(f"images have differing shapes {sorted(dims)}")
        (n, k), = dims
        if n != k:
            raise DimensionError("images must be square")
        object.__setattr__(self, "dim", n)
        inv = {}
        for g in gens:
            m = self.images[g]
            if not m.is_invertible():
                raise ValueError(f"image of {g} is not invertible")
            inv[g] = m.inverse()
        object.__setattr__(self, "_inverses", inv)
        residue = self.evaluate(self.presentation.relator)
        if residue != BitMatrix.identity(n):
            raise RelatorError(
                f"relator {self.presentation.relator} evaluates to\n{residue}\nnot the identity"
            )

    @classmethod
    def trivial(cls, presentation: Presentation, dim: int = 1) -> "Representation":
        return cls(presentation, {g: BitMatrix.identity(dim) for g in presentation.generators})

    def letter(self, gen: str, exp: int) -> BitMatrix:
        return self.images[gen] if exp > 0 else self._inverses[gen]

    def evaluate(self, word: GroupWord) -> BitMatrix:
        out = BitMatrix.identity(self.dim)
        for g, e in word:
            out = out @ self.letter(g, e)
        return out

    def prefix_images(self, word: GroupWord) -> list[BitMatrix]:
        """[rho(p_0), ..., rho(p_n)] for the prefixes of ``word``."""
        out = [BitMatrix.identity(self.dim)]
        for g, e in word:
            out.append(out[-1] @ self.letter(g, e))
        return out


def permutation_representation(
    presentation: Presentation, perms: Mapping[str, Sequence[int]]
) -> Representation:
    """Permutation matrices: generator g sends basis vector i to perms[g][i]."""
    return Representation(presentation, {g: BitMatrix.permutation(p) for g, p in perms.items()})


def parse_cycles(text: str, n: int, one_based: bool = True) -> list[int]:
    """Turn cycle notation like ``"(1 2)(3 4)"`` into an image list on ``range(n)``."""
    perm = list(range(n))
    text = text.strip()
    if text in ("", "()", "1", "id"):
        return perm
    for cyc in re.findall(r"\(([^)]*)\)", text):
        pts = [int(s) - (1 if one_based else 0) for s in re.split(r"[\s,]+", cyc.strip()) if s]
        if any(not 0 <= p < n for p in pts) or len(set(pts)) != len(pts):
            raise ValueError(f"bad cycle ({cyc}) on {n} points")
        for i, p in enumerate(pts):
            perm[p] = pts[(i + 1) % len(pts)]
    if sorted(perm) != list(range(n)):
        raise ValueError(f"cycles {text!r} are not disjoint")
    return perm


def compose(p: Sequence[int], q: Sequence[int]) -> list[int]:
    """p after q."""
    return [p[q[i]] for i in range(len(q))]


def generated_group(perms: Iterable[Sequence[int]]) -> set[tuple[int, ...]]:
    """Closure of a set of permutations under composition."""
    gens = [tuple(p) for p in perms]
    if not gens:
        return set()
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                c = tuple(compose(g, h))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return seen
