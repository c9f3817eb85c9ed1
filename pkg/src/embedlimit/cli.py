"""Command-line entry point: ``embedlimit <verb> ...``.

Exit codes are a stable contract for scripting; see EXIT_* below.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import documents as docs
from .distributions import (
    ZeroCrosscap,
    clt_series,
    crosscap_euler_gap,
    beta_bound_check,
    distribution_from_polynomial,
    euler_from_parts,
)
from .enumerator import (
    BUDGET_ENV,
    BudgetExceeded,
    budget_from_env,
    euler_and_crosscap_polynomials,
    genus_polynomial,
    partial_polynomials,
)
from .kinds import Kind
from .poly import IntPolynomial, poly_compose_square, poly_eval
from .recurrence import FamilySpec, evolve_recurrence, total_polynomial
from .spectral import ColumnSumMismatch, LimitCase, LimitReport, Primitivity, analyze_matrix, analyze_recurrence

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_INCONCLUSIVE = 3
EXIT_MISMATCH = 4
EXIT_BUDGET = 5
EXIT_REFUSED = 6


class Refused(Exception):
    """The command's precondition does not hold (e.g. not a normal limit)."""


class Mismatch(Exception):
    pass


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        docs.write_atomic(path, text)
    else:
        sys.stdout.write(text)


def _budget(args) -> int:
    return args.budget if getattr(args, "budget", None) is not None else budget_from_env()


def analyze_family(fam: docs.FamilyDocument) -> LimitReport:
    if fam.is_matrix:
        try:
            return analyze_matrix(fam.matrix)
        except ColumnSumMismatch as exc:
            return LimitReport(None, None, None, False, Primitivity.UNKNOWN, LimitCase.INCONCLUSIVE, None,
                               diagnostics=[str(exc)])
    return analyze_recurrence(fam.recurrence_spec())


def _nth_total(spec, n: int) -> IntPolynomial:
    if isinstance(spec, FamilySpec):
        return total_polynomial(spec, n)
    return evolve_recurrence(spec, n)


def _seeded_spec(fam: docs.FamilyDocument, budget: int):
    if not fam.has_seeds():
        raise docs.DocumentError("$", f"family {fam.name!r} has no initial data (analysis only)")
    return fam.spec(budget)


def _report_text(name: str, r: LimitReport) -> str:
    lines = [f"family: {name}"]
    for label, q in (("D", r.D), ("e", r.e), ("v", r.v)):
        lines.append(f"{label} = {docs.fraction_str(q)}  ({docs.decimal_str(q)})")
    lines.append(f"case: {r.case.value}")
    lines.append(f"primitivity: {r.primitivity.value}")
    lines.append(f"margin: {r.margin if r.margin is None else f'{r.margin:.12g}'}")
    if r.input_error:
        lines.append(f"input error: {r.input_error}")
    lines += [f"note: {d}" for d in r.diagnostics]
    return "\n".join(lines) + "\n"


# --- verbs ----------------------------------------------------------------


def cmd_analyze(args) -> int:
    fam = docs.load_family(args.family)
    report = analyze_family(fam)
    if args.format == "text":
        _emit(_report_text(fam.name, report), args.output)
    else:
        doc = docs.report_to_doc(report)
        doc["family"] = fam.name
        _emit(docs.dumps(doc), args.output)
    return EXIT_INCONCLUSIVE if report.case is LimitCase.INCONCLUSIVE else EXIT_OK


def cmd_evolve(args) -> int:
    if args.n < 1:
        raise docs.DocumentError("--n", "must be >= 1")
    fam = docs.load_family(args.family)
    P = _nth_total(_seeded_spec(fam, _budget(args)), args.n)
    if args.emit == "dist":
        doc = docs.distribution_to_doc(distribution_from_polynomial(P, fam.kind, args.n))
    else:
        doc = {"type": "polynomial", "family": fam.name, "kind": fam.kind.value, "n": args.n,
               "coefficients": docs.poly_to_doc(P)}
    _emit(docs.dumps(doc), args.output)
    return EXIT_OK


def _parse_n_list(text: str) -> list[int]:
    try:
        ns = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise docs.DocumentError("--n-list", f"expected comma-separated integers, got {text!r}") from None
    if not ns or min(ns) < 1:
        raise docs.DocumentError("--n-list", "needs positive integers")
    return ns


def cmd_clt_check(args) -> int:
    ns = _parse_n_list(args.n_list)
    fam = docs.load_family(args.family)
    report = analyze_family(fam)
    if report.case is not LimitCase.NORMAL:
        raise Refused(f"NotNormalLimit: family {fam.name!r} classifies as {report.case.value}")
    rows = clt_series(_seeded_spec(fam, _budget(args)), report.e, report.v, ns)
    csv = docs.rows_to_csv(rows)
    _emit(csv, args.csv)
    if args.output:
        doc = {"type": "clt_check", "family": fam.name, "report": docs.report_to_doc(report), **docs.rows_to_doc(rows)}
        doc["type"] = "clt_check"
        docs.write_atomic(args.output, docs.dumps(doc))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    G = docs.load_graph(args.graph)
    budget = _budget(args)
    doc: dict = {"type": "enumeration", "kind": args.kind, "vertex_count": G.vertex_count,
                 "edge_count": G.edge_count, "cycle_rank": G.cycle_rank}
    if args.kind == "genus":
        doc["genus"] = docs.poly_to_doc(genus_polynomial(G, budget, args.workers))
    elif args.kind in ("euler", "crosscap"):
        euler, crosscap = euler_and_crosscap_polynomials(G, budget, args.workers)
        doc[args.kind] = docs.poly_to_doc(euler if args.kind == "euler" else crosscap)
    else:
        if args.root_edge is None and G.roots is None:
            raise docs.DocumentError("$.roots", "partials need graph roots or --root-edge")
        if args.root_edge is not None and not 0 <= args.root_edge < G.edge_count:
            raise docs.DocumentError("--root-edge", f"edge {args.root_edge} out of range")
        diff, same = partial_polynomials(G, G.roots, root_edge=args.root_edge, euler=args.euler,
                                         budget=budget, workers=args.workers)
        doc.update({"split": "edge" if args.root_edge is not None else "vertices",
                    "flavor": "euler" if args.euler else "genus",
                    "different": docs.poly_to_doc(diff), "same": docs.poly_to_doc(same)})
    _emit(docs.dumps(doc), args.output)
    return EXIT_OK


def cmd_crosscap_vs_euler(args) -> int:
    doc: dict = {"type": "crosscap_vs_euler"}
    beta = None
    if args.families:
        if args.graph or args.n is None:
            raise docs.DocumentError("--families", "use either a graph file or --families with --n")
        gfam, efam = (docs.load_family(f) for f in args.families)
        if gfam.kind is not Kind.GENUS or efam.kind is not Kind.EULER:
            raise docs.DocumentError("--families", "expected a genus family then an Euler-genus family")
        genus = _nth_total(_seeded_spec(gfam, _budget(args)), args.n)
        euler = _nth_total(_seeded_spec(efam, _budget(args)), args.n)
        crosscap = euler - poly_compose_square(genus)
        if not crosscap.is_nonnegative():
            raise Refused("Euler-genus polynomial is smaller than the orientable part; families are inconsistent")
        doc.update({"source": "families", "n": args.n})
    elif args.graph:
        G = docs.load_graph(args.graph)
        genus = genus_polynomial(G, _budget(args), args.workers)
        euler, crosscap = euler_and_crosscap_polynomials(G, _budget(args), args.workers)
        beta = G.cycle_rank
        doc.update({"source": "graph", "euler_identity": euler_from_parts(genus, crosscap) == euler})
    else:
        raise docs.DocumentError("graph", "a graph file or --families is required")
    try:
        gap = crosscap_euler_gap(genus, crosscap)
    except ZeroCrosscap as exc:
        raise Refused(f"ZeroCrosscap: {exc}") from None
    doc.update({
        "genus": docs.poly_to_doc(genus), "euler": docs.poly_to_doc(euler), "crosscap": docs.poly_to_doc(crosscap),
        "gap": docs.fraction_str(gap.gap), "bound": docs.fraction_str(gap.bound), "a_n": docs.fraction_str(gap.a_n),
        "decimal": {"gap": docs.decimal_str(gap.gap), "bound": docs.decimal_str(gap.bound), "a_n": docs.decimal_str(gap.a_n)},
        "argmax": gap.argmax, "gap_within_bound": gap.gap <= gap.bound,
    })
    if beta is not None:
        doc["beta"] = beta
        doc["beta_check"] = beta_bound_check(poly_eval(genus, 1), poly_eval(euler, 1), beta)
    _emit(docs.dumps(doc), args.output)
    return EXIT_OK


def cmd_oracle_verify(args) -> int:
    fam = docs.load_family(args.family)
    if fam.construction is None:
        raise docs.DocumentError("$.construction", "oracle-verify needs a construction for G_n")
    if args.n_max < 1:
        raise docs.DocumentError("--n-max", "must be >= 1")
    budget = _budget(args)
    euler = fam.kind is Kind.EULER
    graphs = [fam.construction.build(n) for n in range(1, args.n_max + 1)]
    for G in graphs:
        required = G.embedding_count() if euler else G.rotation_count()
        if required > budget:
            raise BudgetExceeded(required, budget)
    spec = _seeded_spec(fam, budget)
    rows, first_bad = [], None
    for n, G in enumerate(graphs, start=1):
        predicted = _nth_total(spec, n)
        actual = euler_and_crosscap_polynomials(G, budget, args.workers)[0] if euler else genus_polynomial(G, budget, args.workers)
        row = {"n": n, "match": predicted == actual, "predicted": docs.poly_to_doc(predicted),
               "enumerated": docs.poly_to_doc(actual)}
        if not row["match"] and first_bad is None:
            i = next(i for i in range(max(len(predicted), len(actual))) if predicted[i] != actual[i])
            first_bad = f"n={n}: coefficient of x^{i} is {predicted[i]} from the family, {actual[i]} by enumeration"
            row["first_difference"] = i
        rows.append(row)
    doc = {"type": "oracle_verify", "family": fam.name, "kind": fam.kind.value, "passed": first_bad is None, "rows": rows}
    _emit(docs.dumps(doc), args.output)
    if first_bad is not None:
        raise Mismatch(first_bad)
    return EXIT_OK


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="embedlimit",
        description="Limit laws of embedding distributions for linear graph families.",
        epilog=f"Family and graph arguments are JSON files or 'fixture:NAME'. "
               f"{BUDGET_ENV} overrides the enumeration budget. Exit codes: 0 ok, 1 internal error, "
               f"2 bad input, 3 inconclusive, 4 mismatch, 5 budget exceeded, 6 refused.",
    )
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, budget=False, workers=False):
        sp.add_argument("-o", "--output", help="write the JSON document here (atomically) instead of stdout")
        if budget:
            sp.add_argument("--budget", type=int, help=f"max embeddings to enumerate (default ${BUDGET_ENV} or 10^7)")
        if workers:
            sp.add_argument("--workers", type=int, default=1, help="enumeration processes")

    sp = sub.add_parser("analyze", help="D, e, v and the limit case of a family")
    sp.add_argument("family")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("evolve", help="exact P_n(x) of a family")
    sp.add_argument("family")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--emit", choices=("poly", "dist"), default="poly")
    common(sp, budget=True)
    sp.set_defaults(func=cmd_evolve)

    sp = sub.add_parser("clt-check", help="distance to the normal limit for several n (CSV)")
    sp.add_argument("family")
    sp.add_argument("--n-list", default="25,50,100,200")
    sp.add_argument("--csv", help="write the CSV here instead of stdout")
    common(sp, budget=True)
    sp.set_defaults(func=cmd_clt_check)

    sp = sub.add_parser("enumerate", help="brute-force embedding distributions of a graph")
    sp.add_argument("graph")
    sp.add_argument("--kind", choices=("genus", "euler", "crosscap", "partials"), default="genus")
    sp.add_argument("--root-edge", type=int, help="partials: split by the two sides of this edge")
    sp.add_argument("--euler", action="store_true", help="partials: Euler-genus instead of genus")
    common(sp, budget=True, workers=True)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("crosscap-vs-euler", help="gap between Euler-genus and crosscap CDFs")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("--families", nargs=2, metavar=("GENUS_FAMILY", "EULER_FAMILY"))
    sp.add_argument("--n", type=int)
    common(sp, budget=True, workers=True)
    sp.set_defaults(func=cmd_crosscap_vs_euler)

    sp = sub.add_parser("oracle-verify", help="compare family totals with enumeration of G_1..G_N")
    sp.add_argument("family")
    sp.add_argument("--n-max", type=int, default=3)
    common(sp, budget=True, workers=True)
    sp.set_defaults(func=cmd_oracle_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except docs.DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"error: BudgetExceeded: {exc} (required {exc.required})", file=sys.stderr)
        return EXIT_BUDGET
    except Mismatch as exc:
        print(f"error: Mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except Refused as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
