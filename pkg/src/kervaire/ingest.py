"""YAML input documents: schema checks with line numbers, then typed objects."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Any

import yaml

from .f2core import BitMatrix, BitVector
from .grouphom import Presentation, RelatorError, SignedRepresentation, parse_cycles, surface_presentation
from .grouphom.pin import perm_matrix
from .jones import JonesData, NamedCycle, QEntry, QPair, QTable, build_jones_data
from .mfldcoh import MonodromyData, TruncatedRing, ring_monodromy, sphere_product_monodromy
from .quadform import QuadraticSpace

KINDS = ("jones", "representation", "q-table", "ring", "monodromy", "quadratic")


class SchemaError(ValueError):
    def __init__(self, message: str, path: tuple = (), line: int | None = None, source: str = "<document>"):
        self.path = path
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line else source
        field = ".".join(str(p) for p in path)
        super().__init__(f"{where}: {field + ': ' if field else ''}{message}")


@dataclass
class _Doc:
    data: Any
    lines: dict
    source: str

    def error(self, path: tuple, message: str) -> SchemaError:
        line = None
        for k in range(len(path), -1, -1):
            if path[:k] in self.lines:
                line = self.lines[path[:k]]
                break
        return SchemaError(message, path, line, self.source)

    def get(self, path: tuple) -> Any:
        x = self.data
        for p in path:
            if isinstance(x, dict) and p not in x:
                # line-map paths carry scalar keys as strings
                p = next(k for k in x if str(k) == str(p))
            x = x[p]
        return x


def _line_map(node, path=(), out=None) -> dict:
    out = {} if out is None else out
    out[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            key = k.value
            _line_map(v, path + (key,), out)
            # point at the key, not the value, for mapping entries
            out[path + (key,)] = k.start_mark.line + 1
    elif isinstance(node, yaml.SequenceNode):
        for i, v in enumerate(node.value):
            _line_map(v, path + (i,), out)
    return out


def load_text(text: str, source: str = "<document>") -> _Doc:
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise SchemaError(f"malformed document: {getattr(exc, 'problem', exc)}",
                          line=mark.line + 1 if mark else None, source=source) from None
    if node is None:
        raise SchemaError("empty document", source=source)
    return _Doc(data, _line_map(node), source)


def load_file(path: str) -> _Doc:
    with open(path, encoding="utf-8") as fh:
        return load_text(fh.read(), path)


def _mapping(doc: _Doc, path: tuple, required: set, optional: set = frozenset()) -> dict:
    value = doc.get(path)
    if not isinstance(value, dict):
        raise doc.error(path, "expected a mapping")
    keys = {str(k) for k in value}
    unknown = sorted(keys - {str(k) for k in required | set(optional)})
    if unknown:
        raise doc.error(path + (unknown[0],), f"unknown key {unknown[0]!r}")
    missing = sorted({str(k) for k in required} - keys)
    if missing:
        raise doc.error(path, f"missing key {missing[0]!r}")
    return value


def _kind(doc: _Doc) -> str:
    if not isinstance(doc.data, dict) or "kind" not in doc.data:
        raise doc.error((), "document needs a 'kind' field")
    kind = doc.data["kind"]
    if kind not in KINDS:
        raise doc.error(("kind",), f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    return kind


def _int01(doc: _Doc, path: tuple, allow_none: bool = False):
    v = doc.get(path)
    if v is None and allow_none:
        return None
    if isinstance(v, bool) or v not in (0, 1):
        raise doc.error(path, f"value must be 0 or 1, got {v!r}")
    return v


def _presentation(doc: _Doc, m: dict) -> Presentation:
    if "generators" not in m and "relator" not in m:
        return surface_presentation()
    if "generators" not in m or "relator" not in m:
        raise doc.error((), "give both 'generators' and 'relator' or neither")
    gens = m["generators"]
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise doc.error(("generators",), "expected a list of names")
    try:
        return Presentation.parse(gens, str(m["relator"]))
    except ValueError as exc:
        raise doc.error(("relator",), str(exc)) from None


def _qtable(doc: _Doc, path: tuple) -> QTable:
    m = _mapping(doc, path, {"pairs"}, {"kind"})
    if not isinstance(m["pairs"], list) or not m["pairs"]:
        raise doc.error(path + ("pairs",), "expected a nonempty list")
    pairs = []
    for i in range(len(m["pairs"])):
        p = path + ("pairs", i)
        pm = _mapping(doc, p, {"first", "second"}, {"contribution"})
        entries = []
        for slot in ("first", "second"):
            e = _mapping(doc, p + (slot,), {"loop", "fiber"}, {"q", "label"})
            try:
                cyc = NamedCycle.make(str(e["loop"]), str(e["fiber"]), e.get("label"))
            except ValueError as exc:
                raise doc.error(p + (slot,), str(exc)) from None
            q = _int01(doc, p + (slot, "q"), allow_none=True) if "q" in e else None
            entries.append(QEntry(cyc, q))
        contrib = _int01(doc, p + ("contribution",), allow_none=True) if "contribution" in pm else None
        try:
            pairs.append(QPair(entries[0], entries[1], contrib))
        except ValueError as exc:
            raise doc.error(p, str(exc)) from None
    return QTable(tuple(pairs))


def _bitmatrix(doc: _Doc, path: tuple, square: bool = True) -> BitMatrix:
    rows = doc.get(path)
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise doc.error(path, "expected a list of rows")
    n = len(rows)
    for i, r in enumerate(rows):
        if (square and len(r) != n) or any(x not in (0, 1) or isinstance(x, bool) for x in r):
            raise doc.error(path + (i,), "rows must be 0/1 lists of equal length" + (" (square)" if square else ""))
    if n == 0:
        return BitMatrix.zeros(0, 0)
    return BitMatrix.from_lists(rows)


def ingest(doc: _Doc) -> Any:
    kind = _kind(doc)
    if kind == "jones":
        m = _mapping(doc, (), {"kind", "monodromy"}, {"generators", "relator", "q_table"})
        pres = _presentation(doc, m)
        mono = _mapping(doc, ("monodromy",), set(pres.generators))
        qt = _qtable(doc, ("q_table",)) if "q_table" in m else None
        try:
            return build_jones_data({g: str(v) for g, v in mono.items()}, pres, qt)
        except RelatorError as exc:
            raise doc.error(("monodromy",), f"representation fails the relator check: {exc}") from None
        except ValueError as exc:
            raise doc.error(("monodromy",), str(exc)) from None
    if kind == "representation":
        m = _mapping(doc, (), {"kind"}, {"generators", "relator", "permutations", "matrices", "signs", "size"})
        pres = _presentation(doc, m)
        if ("permutations" in m) == ("matrices" in m):
            raise doc.error((), "give exactly one of 'permutations' or 'matrices'")
        images = {}
        if "permutations" in m:
            perms = _mapping(doc, ("permutations",), set(pres.generators))
            signs = _mapping(doc, ("signs",), set(), set(pres.generators)) if "signs" in m else {}
            points = [int(x) for v in perms.values()
                      for x in str(v).replace("(", " ").replace(")", " ").replace(",", " ").split()]
            n = m.get("size", max(points, default=1))
            if not isinstance(n, int) or n < 1:
                raise doc.error(("size",), "expected a positive integer")
            for g, v in perms.items():
                try:
                    perm = parse_cycles(str(v), n)
                except ValueError as exc:
                    raise doc.error(("permutations", g), str(exc)) from None
                sg = signs.get(g, [1] * n)
                if not isinstance(sg, list) or len(sg) != n or any(s not in (1, -1) for s in sg):
                    raise doc.error(("signs", g), f"expected {n} entries of +1/-1")
                images[g] = perm_matrix(perm, sg)
        else:
            mats = _mapping(doc, ("matrices",), set(pres.generators))
            for g, rows in mats.items():
                if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
                    raise doc.error(("matrices", g), "expected a list of integer rows")
                images[g] = tuple(tuple(int(x) for x in r) for r in rows)
        try:
            return SignedRepresentation(pres, images)
        except RelatorError as exc:
            raise doc.error(("relator",), f"representation fails the relator check: {exc}") from None
        except ValueError as exc:
            raise doc.error((), str(exc)) from None
    if kind == "q-table":
        return _qtable(doc, ())
    if kind == "ring":
        m = _mapping(doc, (), {"kind", "truncations", "pi"}, {"powers"})
        tops = m["truncations"]
        if not isinstance(tops, list) or not tops or any(not isinstance(t, int) or t < 1 for t in tops):
            raise doc.error(("truncations",), "expected a list of positive top exponents")
        R = TruncatedRing(tuple(tops))
        try:
            pi = R.parse(str(m["pi"]))
            if pi and R.degree(pi) != 1:
                raise ValueError("pi must have degree 1")
        except ValueError as exc:
            raise doc.error(("pi",), str(exc)) from None
        powers = []
        for i, p in enumerate(m.get("powers") or []):
            pm = _mapping(doc, ("powers", i), {"u", "k"})
            try:
                u = R.parse(str(pm["u"]))
                R.degree(u)
            except ValueError as exc:
                raise doc.error(("powers", i, "u"), str(exc)) from None
            if not isinstance(pm["k"], int) or pm["k"] < 0:
                raise doc.error(("powers", i, "k"), "expected a nonnegative integer")
            powers.append((u, pm["k"]))
        return RingDocument(R, pi, tuple(powers))
    if kind == "monodromy":
        m = _mapping(doc, (), {"kind"}, {"spheres", "projective", "permutation", "degrees"})
        if "degrees" in m:
            if set(m) - {"kind", "degrees"}:
                raise doc.error((), "'degrees' cannot be combined with other fiber descriptions")
            degs = _mapping(doc, ("degrees",), set(), set(m["degrees"]))
            maps = {}
            for d in degs:
                if not isinstance(d, int) or d < 0:
                    raise doc.error(("degrees", str(d)), "degrees must be nonnegative integers")
                maps[d] = _bitmatrix(doc, ("degrees", str(d)))
            try:
                return MonodromyData(maps)
            except ValueError as exc:
                raise doc.error(("degrees",), str(exc)) from None
        if ("spheres" in m) == ("projective" in m):
            raise doc.error((), "give exactly one of 'spheres', 'projective' or 'degrees'")
        key = "spheres" if "spheres" in m else "projective"
        dims = m[key]
        if not isinstance(dims, list) or any(not isinstance(x, int) or x < 1 for x in dims):
            raise doc.error((key,), "expected a list of positive dimensions")
        perm = m.get("permutation", list(range(len(dims))))
        if not isinstance(perm, list) or sorted(perm) != list(range(len(dims))):
            raise doc.error(("permutation",), f"expected a permutation of 0..{len(dims) - 1}")
        try:
            if key == "spheres":
                return sphere_product_monodromy(dims, perm)
            R = TruncatedRing(tuple(dims))
            if any(dims[i] != dims[perm[i]] for i in range(len(dims))):
                raise ValueError("can only permute factors of equal dimension")
            return ring_monodromy(R, perm)
        except ValueError as exc:
            raise doc.error(("permutation",), str(exc)) from None
    # quadratic
    m = _mapping(doc, (), {"kind", "gram", "values"})
    gram = _bitmatrix(doc, ("gram",))
    vals = m["values"]
    if not isinstance(vals, list) or len(vals) != gram.rows:
        raise doc.error(("values",), f"expected {gram.rows} values")
    for i in range(len(vals)):
        _int01(doc, ("values", i))
    try:
        return QuadraticSpace(gram, BitVector.from_list(vals))
    except ValueError as exc:
        raise doc.error(("gram",), str(exc)) from None


@dataclass(frozen=True)
class RingDocument:
    ring: TruncatedRing
    pi: frozenset
    powers: tuple


def ingest_text(text: str, source: str = "<document>", expect: str | None = None) -> Any:
    doc = load_text(text, source)
    if expect is not None and _kind(doc) != expect:
        raise doc.error(("kind",), f"expected a {expect!r} document, got {doc.data['kind']!r}")
    return ingest(doc)


def ingest_file(path: str, expect: str | None = None) -> Any:
    with open(path, encoding="utf-8") as fh:
        return ingest_text(fh.read(), path, expect)


def bundled_text(name: str) -> str:
    return resources.files("kervaire.data").joinpath(name).read_text(encoding="utf-8")


def default_jones() -> JonesData:
    return ingest_text(bundled_text("jones.yaml"), "jones.yaml", expect="jones")


def default_q_table_document() -> QTable:
    return ingest_text(bundled_text("q_table.yaml"), "q_table.yaml", expect="q-table")
