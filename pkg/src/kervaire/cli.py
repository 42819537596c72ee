"""Command-line entry point: ``kervaire <subcommand>``.

Exit status: 0 when every hard check passes, 1 on a hard failure, 2 on a
usage or input-document error.  Mismatches against stated values never
change the exit status.
"""
from __future__ import annotations

import argparse
import random
import sys
import time
from typing import Sequence

from . import __version__, jones, mfldcoh, steenrod
from .cayley import check_norm_multiplicativity, verify_neutrality
from .grouphom import RelatorError
from .ingest import RingDocument, SchemaError, default_jones, default_q_table_document, ingest_file
from .quadform import (
    QuadraticSpace,
    RefinementError,
    arf,
    arf_count_oracle,
    random_quadratic_space,
    symplectic_basis,
)
from .report import VerificationReport, compare, hard, hard_equal, note

HEADER = (
    "H_15 of the 30-manifold is computed as H_1(pi; Omega), Omega = H_14((S^7)^4): "
    "the Serre spectral sequence of the flat bundle collapses (fiber homology in degrees 7s, base a surface)."
)


def adem_checks(j: int, start_index: int) -> list:
    rem = steenrod.check_kervaire_relation(j, start_index)
    text = steenrod.format_sum(rem)
    lhs = steenrod.format_sum(steenrod.kervaire_relation_lhs(j, start_index))
    if start_index == 0:
        return [hard_equal(f"Adem: {lhs} (j={j}, sum from i=0)", text, "0", "oracle: Adem rewriting")]
    return [compare(f"Adem: {lhs} (j={j}, sum from i=1)", text, "0", "stated relation, sum starting at i=1")]


def steenrod_section(seed: int, samples: int = 100) -> list:
    out = []
    for j in range(1, 7):
        out += adem_checks(j, 0)
    for j in range(1, 5):
        out += adem_checks(j, 1)
    bad = steenrod.faithfulness_failures(samples, seed=seed)
    out.append(hard_equal(f"Adem rewriting preserves the action ({samples} monomials)", len(bad), 0,
                          "oracle: Cartan formula on F2[t1..t6]"))
    out.append(hard_equal("admissible basis in degree 12", len(steenrod.admissible_basis(12)), 7,
                          "oracle: enumeration"))
    return out


def arf_section(seed: int, samples: int = 50) -> list:
    rng = random.Random(seed)
    agree = 0
    for _ in range(samples):
        sp = random_quadratic_space(rng, rng.randint(0, 5))
        agree += arf(sp) == arf_count_oracle(sp)
    return [hard_equal(f"Arf equals zero-count oracle ({samples} random spaces)", agree, samples,
                       "oracle: 2^(n-1) +- 2^(g-1) zeros")]


def octonion_section(grid: int, samples: int, seed: int, products: int = 1000) -> list:
    rep = verify_neutrality(grid, samples, seed)
    tol = rep.tolerance
    return [
        note("arithmetic mode", rep.mode, "exact where 2t is an integer, floats elsewhere"),
        hard(f"|F(t,e1) e2| = 1 ({samples} pairs, {grid}-point grid)", rep.max_norm_deviation <= tol,
             f"max deviation {rep.max_norm_deviation:.1e}", f"<= {tol:g}", "numerical evaluation"),
        hard("F(t,e1) e2 orthogonal to e1", rep.max_orthogonality_deviation <= tol,
             f"max deviation {rep.max_orthogonality_deviation:.1e}", f"<= {tol:g}", "numerical evaluation"),
        hard("F(t,e1) orthogonal matrix", rep.max_matrix_deviation <= tol,
             f"max deviation {rep.max_matrix_deviation:.1e}", f"<= {tol:g}", "numerical evaluation"),
        hard("F(t,e1) fixes e1", rep.max_axis_deviation <= tol,
             f"max deviation {rep.max_axis_deviation:.1e}", f"<= {tol:g}", "numerical evaluation"),
        hard_equal("F(0) = Id (exact)", rep.start_is_identity, True, "stated: F(0) = Id"),
        hard_equal("F(1) = (e1, -e2) (exact)", rep.end_is_involution, True, "stated: F(1) = I"),
        hard_equal(f"norm multiplicativity on {products} rational pairs", check_norm_multiplicativity(products, seed), 0,
                   "exact rational arithmetic"),
    ]


def jones_sections(report: VerificationReport, data=None, table=None, strict: bool = False) -> None:
    data = data or default_jones()
    report.section("Jones monodromy", jones.monodromy_checks(data))
    report.section("Jones homology", jones.h15_consistency_report(data))
    report.section("Intersection form", jones.gram_checks(data))
    report.section("Named cycles", jones.catalog_checks(data))
    table = table or data.q_table or default_q_table_document()
    report.section("Arf invariant", jones.arf_jones(table, data, strict=strict).checks)


def cmd_report(args) -> VerificationReport:
    r = VerificationReport(notes=[HEADER])
    r.section("Steenrod algebra", steenrod_section(args.seed))
    r.section("Arf invariant oracle", arf_section(args.seed))
    r.section("Trivial-coefficient cup form", jones.trivial_form_checks())
    jones_sections(r)
    r.section("Flat bundle classes", jones.flat_bundle_checks())
    r.section("Characteristic numbers", mfldcoh.section5_checks(args.lemma_input))
    r.section("Octonion neutrality", octonion_section(args.grid, args.samples, args.seed))
    return r


def cmd_adem(args) -> VerificationReport:
    r = VerificationReport()
    r.section("Adem relation", adem_checks(args.j, args.start_index))
    rem = steenrod.check_kervaire_relation(args.j, args.start_index)
    r.notes.append("relation holds (empty remainder)" if not rem
                   else f"relation fails; remainder {steenrod.format_sum(rem)}")
    return r


def cmd_jones_betti(args) -> VerificationReport:
    data = ingest_file(args.file, "jones") if args.file else default_jones()
    r = VerificationReport(notes=[HEADER, "Betti numbers: " + " ".join(map(str, jones.full_betti_vector(data)))])
    r.section("Jones monodromy", jones.monodromy_checks(data))
    r.section("Jones homology", jones.h15_consistency_report(data))
    return r


def cmd_jones_gram(args) -> VerificationReport:
    data = ingest_file(args.file, "jones") if args.file else default_jones()
    gram, pairs = jones.intersection_gram(data)
    r = VerificationReport(notes=["Gram matrix on H^1(pi; Omega):"] + str(gram).splitlines())
    r.section("Intersection form", jones.gram_checks(data))
    r.section("Named cycles", jones.catalog_checks(data))
    return r


def cmd_jones_arf(args) -> VerificationReport:
    data = default_jones()
    table = ingest_file(args.q_table, "q-table") if args.q_table else default_q_table_document()
    rep = jones.arf_jones(table, data, strict=args.strict)
    value = "undetermined" if rep.declared.value is None else rep.declared.value
    r = VerificationReport(notes=[f"restricted Arf invariant on the stated pairs: {value}"])
    r.section("Arf invariant", rep.checks)
    return r


def cmd_section5(args) -> VerificationReport:
    rep = mfldcoh.char_number_reduction_report(args.lemma_input)
    r = VerificationReport(notes=[f"{a}: {b}  [{c}]" for a, b, c in rep.steps])
    r.section("Characteristic numbers", mfldcoh.section5_checks(args.lemma_input))
    return r


def cmd_gysin(args) -> VerificationReport:
    doc: RingDocument = ingest_file(args.file, "ring")
    R = doc.ring
    betti = mfldcoh.double_cover_betti(R, doc.pi)
    checks = [
        note("Betti numbers of the double cover", betti, "Gysin sequence"),
        hard("Betti numbers palindromic", mfldcoh.is_palindromic(betti), betti, "palindromic", "Poincare duality mod 2"),
        hard_equal("Euler characteristic doubles", mfldcoh.euler_characteristic(betti),
                   2 * mfldcoh.euler_characteristic(R.betti()), "two-sheeted cover"),
    ]
    for u, k in doc.powers:
        qv = mfldcoh.pullback_power_evaluate(R, doc.pi, u, k)
        checks.append(note(f"({R.format(u)})^{k} modulo pi", R.format(qv.reduced), "quotient-ring normal form"))
    r = VerificationReport()
    r.section("Gysin sequence", checks)
    return r


def cmd_wang(args) -> VerificationReport:
    m = ingest_file(args.file, "monodromy")
    betti = mfldcoh.wang_betti(m)
    fiber = m.fiber_betti()
    checks = [note("Betti numbers of the mapping torus", betti, "Wang sequence")]
    if mfldcoh.is_palindromic(fiber):
        checks.append(hard("Betti numbers palindromic", mfldcoh.is_palindromic(betti), betti, "palindromic",
                           "Poincare duality mod 2"))
    checks.append(hard_equal("Euler characteristic zero", mfldcoh.euler_characteristic(betti), 0, "mapping torus"))
    r = VerificationReport()
    r.section("Wang sequence", checks)
    return r


def cmd_sw_flat(args) -> VerificationReport:
    rho = ingest_file(args.file, "representation") if args.file else None
    r = VerificationReport()
    r.section("Flat bundle classes", jones.flat_bundle_checks(rho))
    return r


def cmd_octonion(args) -> VerificationReport:
    r = VerificationReport()
    r.section("Octonion neutrality", octonion_section(args.grid, args.samples, args.seed))
    return r


def cmd_arf(args) -> VerificationReport:
    space: QuadraticSpace = ingest_file(args.file, "quadratic")
    checks = [hard_equal("q refines the form", space.is_refinement(), True, "q(x+y) = q(x) + q(y) + B(x,y)")]
    try:
        symplectic_basis(space.gram)
    except ValueError as exc:
        checks.append(hard("form nondegenerate and alternating", False, str(exc), True, "symplectic extraction"))
        r = VerificationReport()
        r.section("Arf invariant", checks)
        return r
    value = arf(space)
    checks.append(note("Arf invariant", value, "symplectic basis"))
    if space.dim <= 24:
        try:
            checks.append(hard_equal("Arf equals zero-count oracle", value, arf_count_oracle(space), "enumeration"))
        except RefinementError as exc:
            checks.append(hard("Arf equals zero-count oracle", False, str(exc), value, "enumeration"))
    r = VerificationReport()
    r.section("Arf invariant", checks)
    return r


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand's defaults from overwriting options given before it
    common.add_argument("--format", choices=["text", "machine"], default=argparse.SUPPRESS)
    common.add_argument("--timings", action="store_true", default=argparse.SUPPRESS,
                        help="record wall-clock time in the metadata")

    p = argparse.ArgumentParser(prog="kervaire", parents=[common],
                                description="Exact F2 recomputation of Kervaire-invariant constructions.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("report", parents=[common], help="run every check")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--grid", type=int, default=11)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--lemma-input", type=int, choices=[0, 1], default=1)
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("adem", parents=[common], help="Adem rewriting of the Kervaire relation")
    s.add_argument("--j", type=int, required=True, choices=range(1, 7), metavar="J")
    s.add_argument("--start-index", type=int, choices=[0, 1], default=0)
    s.set_defaults(func=cmd_adem)

    for name, fn, helptext in (("jones-betti", cmd_jones_betti, "Betti numbers of the 30-manifold"),
                               ("jones-gram", cmd_jones_gram, "intersection form on H_15")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file", nargs="?", help="jones document (default: bundled)")
        s.set_defaults(func=fn)

    s = sub.add_parser("jones-arf", parents=[common], help="Arf invariant from a q-table")
    s.add_argument("--q-table", metavar="FILE")
    s.add_argument("--strict", action="store_true", help="fail if the q-table is not realized by homology classes")
    s.set_defaults(func=cmd_jones_arf)

    s = sub.add_parser("section5", parents=[common], help="characteristic-number reduction")
    s.add_argument("--lemma-input", type=int, choices=[0, 1], default=1)
    s.set_defaults(func=cmd_section5)

    for name, fn, helptext in (("gysin", cmd_gysin, "double cover Betti numbers from a ring document"),
                               ("wang", cmd_wang, "mapping torus Betti numbers from a monodromy document"),
                               ("arf", cmd_arf, "Arf invariant of a quadratic document")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file")
        s.set_defaults(func=fn)

    s = sub.add_parser("sw-flat", parents=[common], help="w1 and w2 of a flat bundle")
    s.add_argument("file", nargs="?", help="representation document (default: the Jones monodromy)")
    s.set_defaults(func=cmd_sw_flat)

    s = sub.add_parser("octonion", parents=[common], help="neutrality homotopy of V_{7,2}")
    s.add_argument("--grid", type=int, default=11)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_octonion)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "grid", 2) < 2:
        print("kervaire: --grid must be at least 2", file=err)
        return 2
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (SchemaError, RelatorError, OSError) as exc:
        print(f"kervaire: {exc}", file=err)
        return 2
    except RefinementError as exc:
        print(f"kervaire: {exc}", file=err)
        return 1
    report.metadata = {"version": __version__, "command": args.command}
    if hasattr(args, "seed"):
        report.metadata["seed"] = args.seed
    if getattr(args, "timings", False):
        report.metadata["seconds"] = round(time.perf_counter() - start, 3)
    out.write(report.to_machine() if getattr(args, "format", "text") == "machine" else report.to_text())
    return report.exit_code()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
