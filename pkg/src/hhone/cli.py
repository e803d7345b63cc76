"""Command line surface and file formats; the only module doing I/O.

Two JSON schemas cross the process boundary.  AlgebraFileV1 carries one
algebra by structure constants: {"schema", "field_char", "dim", "basis",
"unit", "mult", "meta"}, where mult lists sparse [i, j, k, c] quadruples
sorted by (i, j, k) with coefficients in [1, p-1]; parsing a canonical
file and emitting it again reproduces the bytes.  ReportFileV1 carries
the tool version, the seed, check records, and per-algebra summaries
with sorted keys, so runs with equal seeds emit byte-identical reports.

Exit codes: 0 all checks pass, 1 a check failed, 2 a randomized search
was inconclusive, 3 bad input (usage, parameters, or schema).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, assoc, deriv, ffmat, lie, verify
from .errors import InconclusiveError, SchemaError
from .groups import GroupSpec
from .lie import _jsonable

SCHEMA_ALGEBRA = "AlgebraFileV1"
SCHEMA_REPORT = "ReportFileV1"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_BAD_INPUT = 3

_ALGEBRA_KEYS = ("schema", "field_char", "dim", "basis", "unit", "mult", "meta")


# ----------------------------------------------------------------------
# AlgebraFileV1

def emit_algebra(a: assoc.AssocAlgebra) -> dict:
    """Canonical document for an algebra; emit(parse(doc)) == doc."""
    mult = [[int(i), int(j), int(k), int(a.sc[i, j, k])]
            for i, j, k in np.argwhere(a.sc)]
    return {
        "schema": SCHEMA_ALGEBRA,
        "field_char": int(a.p),
        "dim": int(a.dim),
        "basis": list(a.labels),
        "unit": [int(c) for c in a.unit],
        "mult": mult,
        "meta": _jsonable(a.meta),
    }


def _expect_int(value, path: str, lo: int, hi: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(path, "expected an integer")
    if not lo <= value <= hi:
        raise SchemaError(path, f"expected a value in [{lo}, {hi}], got {value}")
    return value


def parse_algebra(doc) -> assoc.AssocAlgebra:
    """Validate an AlgebraFileV1 document and build the algebra.

    Schema violations raise SchemaError with the JSON path of the bad
    value; the algebra constructor then re-checks associativity and the
    unit, so no invalid table survives parsing.
    """
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected an object")
    if doc.get("schema") != SCHEMA_ALGEBRA:
        raise SchemaError("$.schema", f"expected {SCHEMA_ALGEBRA!r}")
    for key in _ALGEBRA_KEYS:
        if key not in doc:
            raise SchemaError(f"$.{key}", "missing required key")
    for key in doc:
        if key not in _ALGEBRA_KEYS:
            raise SchemaError(f"$.{key}", "unknown key")
    p = _expect_int(doc["field_char"], "$.field_char", 2, 2**31)
    try:
        ffmat.PrimeField(p)
    except ValueError as exc:
        raise SchemaError("$.field_char", str(exc)) from None
    d = _expect_int(doc["dim"], "$.dim", 1, 10**6)
    basis = doc["basis"]
    if not isinstance(basis, list) or len(basis) != d:
        raise SchemaError("$.basis", f"expected a list of {d} labels")
    for i, lbl in enumerate(basis):
        if not isinstance(lbl, str):
            raise SchemaError(f"$.basis[{i}]", "expected a string")
    unit_doc = doc["unit"]
    if not isinstance(unit_doc, list) or len(unit_doc) != d:
        raise SchemaError("$.unit", f"expected a list of {d} coefficients")
    unit = np.zeros(d, dtype=np.int64)
    for i, c in enumerate(unit_doc):
        unit[i] = _expect_int(c, f"$.unit[{i}]", 0, p - 1)
    mult = doc["mult"]
    if not isinstance(mult, list):
        raise SchemaError("$.mult", "expected a list of [i, j, k, c] quadruples")
    sc = np.zeros((d, d, d), dtype=np.int64)
    seen = set()
    for r, quad in enumerate(mult):
        loc = f"$.mult[{r}]"
        if not isinstance(quad, list) or len(quad) != 4:
            raise SchemaError(loc, "expected an [i, j, k, c] quadruple")
        i = _expect_int(quad[0], f"{loc}[0]", 0, d - 1)
        j = _expect_int(quad[1], f"{loc}[1]", 0, d - 1)
        k = _expect_int(quad[2], f"{loc}[2]", 0, d - 1)
        c = _expect_int(quad[3], f"{loc}[3]", 1, p - 1)
        if (i, j, k) in seen:
            raise SchemaError(loc, f"duplicate entry for ({i}, {j}, {k})")
        seen.add((i, j, k))
        sc[i, j, k] = c
    if not isinstance(doc["meta"], dict):
        raise SchemaError("$.meta", "expected an object")
    return assoc.AssocAlgebra(sc, unit, p, meta=doc["meta"], labels=basis)


def save_algebra(a: assoc.AssocAlgebra, path) -> None:
    Path(path).write_text(json.dumps(emit_algebra(a), indent=2) + "\n")


def load_algebra(path) -> assoc.AssocAlgebra:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError("$", f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    return parse_algebra(doc)


# ----------------------------------------------------------------------
# ReportFileV1

def report_doc(seed: int, records, algebras: dict) -> dict:
    return {
        "schema": SCHEMA_REPORT,
        "tool_version": __version__,
        "rng_seed": seed,
        "records": [r.as_dict() for r in records],
        "algebras": algebras,
    }


def render_report(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if doc["records"]:
        w.writerow(["suite", "algebra", "claim", "status",
                    "expected", "computed", "certificate"])
        for r in doc["records"]:
            w.writerow([r["suite"], r["algebra"], r["claim"], r["status"],
                        json.dumps(r["expected"], sort_keys=True),
                        json.dumps(r["computed"], sort_keys=True),
                        json.dumps(r["certificate"], sort_keys=True)])
    else:
        w.writerow(["algebra", "field", "value"])
        for name in sorted(doc["algebras"]):
            s = doc["algebras"][name]
            for key in sorted(s):
                w.writerow([name, key, json.dumps(s[key], sort_keys=True)])
    return buf.getvalue()


def _deliver(doc: dict, args) -> None:
    """Report to --report if given, else stdout; stdout stays machine-clean."""
    text = render_report(doc, args.format)
    if args.report:
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _algebra_name(a: assoc.AssocAlgebra) -> str:
    m = a.meta
    if m.get("construction") == "group_algebra" and "group" in m:
        return f"k{m['group']} over GF({a.p})"
    if m.get("construction") == "truncated_polynomial":
        n = m.get("nvars", 1)
        if n == 1:
            return f"k[t]/(t^{a.p}) over GF({a.p})"
        return f"k[x1..x{n}]/(x_i^{a.p}) over GF({a.p})"
    return f"algebra of dim {a.dim} over GF({a.p})"


# ----------------------------------------------------------------------
# commands

def _spec_from_args(args, parser) -> GroupSpec:
    fam = args.family

    def need(flag, value):
        if value is None:
            parser.error(f"--family {fam} requires {flag}")
        return value

    if fam == "cyclic":
        return GroupSpec.cyclic(need("--n", args.n))
    if fam == "elem-abelian":
        return GroupSpec.elem_abelian(args.p, need("--rank", args.rank))
    if fam == "dihedral":
        return GroupSpec.dihedral(need("--n", args.n))
    if fam == "quaternion":
        return GroupSpec.quaternion8()
    if fam == "semidirect":
        return GroupSpec.semidirect_cp_cm(args.p, need("--m", args.m),
                                          need("--d", args.d))
    if fam == "extraspecial":
        return GroupSpec.extraspecial_p3(args.p)
    if fam == "product":
        text = need("--factors", args.factors)
        try:
            orders = [int(t) for t in text.split(",")]
        except ValueError:
            parser.error("--factors expects comma-separated cyclic orders, e.g. 2,4")
        return GroupSpec.product(*[GroupSpec.cyclic(n) for n in orders])
    parser.error(f"unknown family {fam}")


def cmd_construct(args, parser) -> int:
    ffmat.PrimeField(args.p)
    spec = _spec_from_args(args, parser)
    a = assoc.group_algebra(spec.build(), args.p)
    save_algebra(a, args.out)
    print(f"wrote {args.out}: {_algebra_name(a)}, dim {a.dim}, "
          f"commutative={a.is_commutative()}, local={a.is_local()}, "
          f"symmetric={a.is_symmetric()}, uniserial={a.is_uniserial()}")
    return EXIT_PASS


def cmd_analyze(args, parser) -> int:
    a = load_algebra(args.input)
    name = _algebra_name(a)
    summary = dict(verify.algebra_summary(a, seed=args.seed))
    summary["blocks"] = len(a.block_decomposition(seed=args.seed))
    _say(f"{name}: dim = {a.dim}, dim Z = {summary['center_dim']}, "
         f"dim J = {a.radical().dim}, blocks = {summary['blocks']}")
    _deliver(report_doc(args.seed, [], {name: summary}), args)
    return EXIT_PASS


def cmd_hh1(args, parser) -> int:
    a = load_algebra(args.input)
    name = _algebra_name(a)
    summary = verify.algebra_summary(a, with_hh1=True, seed=args.seed)
    _say(f"{name}: dim HH^1 = {summary['hh1_dim']} "
         f"(Der {summary['der_dim']}, inner {summary['ider_dim']})")
    _deliver(report_doc(args.seed, [], {name: summary}), args)
    return EXIT_PASS


def cmd_lie(args, parser) -> int:
    if (args.input is None) == (args.input_witt is None):
        parser.error("provide exactly one of an input file or --input-witt n,p")
    if args.input_witt is not None:
        try:
            n, p = (int(t) for t in args.input_witt.split(","))
        except ValueError:
            parser.error("--input-witt expects n,p (e.g. 1,3)")
        w = lie.witt(n, p)
        name = f"W({n};1) over GF({p})"
        v = lie.is_simple(w, seed=args.seed)
        summary = _jsonable({
            "dim": w.dim,
            "p": p,
            "simple": v.verdict,
            "witness_dim": None if v.witness is None else v.witness.dim,
            "certificate": v.certificate,
        })
    else:
        a = load_algebra(args.input)
        name = _algebra_name(a)
        summary = dict(verify.algebra_summary(a, with_hh1=True, seed=args.seed))
        h = deriv.hh1(a)
        v = lie.is_simple(h.lie, seed=args.seed)
        summary.update(_jsonable({
            "hh1_abelian": h.lie.is_abelian(),
            "hh1_solvable": h.lie.is_solvable(),
            "hh1_nilpotent": h.lie.is_nilpotent(),
            "witness_dim": None if v.witness is None else v.witness.dim,
            "certificate": v.certificate,
        }))
    _deliver(report_doc(args.seed, [], {name: summary}), args)
    if v.verdict == "inconclusive":
        _say(f"{name}: simplicity inconclusive")
        return EXIT_INCONCLUSIVE
    _say(f"{name}: simple = {'true' if v.verdict == 'simple' else 'false'}")
    return EXIT_PASS


def cmd_verify(args, parser) -> int:
    if args.suite == "all":
        suites = verify.SUITE_NAMES
    else:
        suites = tuple(args.suite.split(","))
    try:
        primes = tuple(int(t) for t in args.p.split(","))
    except ValueError:
        parser.error("--p expects comma-separated primes, e.g. 2,3,5,7")
    cfg = verify.SuiteConfig(primes=primes, max_group_order=args.max_order,
                             rng_seed=args.seed, suites=suites)
    run = verify.run(cfg)
    _deliver(report_doc(args.seed, run.records, run.summaries), args)
    counts = {"pass": 0, "fail": 0, "inconclusive": 0}
    for r in run.records:
        counts[r.status] += 1
    _say(f"{len(run.records)} checks: {counts['pass']} pass, "
         f"{counts['fail']} fail, {counts['inconclusive']} inconclusive")
    worst = run.worst_status()
    if worst == "fail":
        return EXIT_FAIL
    if worst == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


# ----------------------------------------------------------------------
# parser

class _Parser(argparse.ArgumentParser):
    """argparse, but usage errors exit with the bad-input code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_INPUT, f"{self.prog}: error: {message}\n")


def _add_report_flags(sub):
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--report", metavar="PATH", default=None)
    sub.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hhone",
                     description="Exact HH^1 computations over prime fields.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    con = subs.add_parser("construct", help="write a group algebra file")
    con.add_argument("--family", required=True,
                     choices=("cyclic", "elem-abelian", "dihedral", "quaternion",
                              "semidirect", "extraspecial", "product"))
    con.add_argument("--p", type=int, required=True,
                     help="field characteristic (and the prime parameter "
                          "for elem-abelian, semidirect, extraspecial)")
    con.add_argument("--n", type=int, default=None, help="group order for cyclic/dihedral")
    con.add_argument("--rank", type=int, default=None, help="rank for elem-abelian")
    con.add_argument("--m", type=int, default=None, help="acting cyclic order for semidirect")
    con.add_argument("--d", type=int, default=None,
                     help="action multiplier for semidirect; must have order m mod p")
    con.add_argument("--factors", default=None,
                     help="comma-separated cyclic orders for product, e.g. 2,4")
    con.add_argument("-o", "--out", required=True, metavar="PATH")
    con.set_defaults(func=cmd_construct)

    ana = subs.add_parser("analyze", help="structural summary of an algebra file")
    ana.add_argument("input", metavar="ALGEBRA.json")
    _add_report_flags(ana)
    ana.set_defaults(func=cmd_analyze)

    hh = subs.add_parser("hh1", help="derivations, inner derivations, and HH^1")
    hh.add_argument("input", metavar="ALGEBRA.json")
    _add_report_flags(hh)
    hh.set_defaults(func=cmd_hh1)

    li = subs.add_parser("lie", help="Lie structure of HH^1 or of a Witt algebra")
    li.add_argument("input", nargs="?", default=None, metavar="ALGEBRA.json")
    li.add_argument("--input-witt", default=None, metavar="N,P",
                    help="analyze W(n;1) over GF(p) instead of a file")
    _add_report_flags(li)
    li.set_defaults(func=cmd_lie)

    ver = subs.add_parser("verify", help="run the claim suites")
    ver.add_argument("--suite", default="all",
                     help="comma-separated suite names, or 'all'")
    ver.add_argument("--max-order", type=int, default=32)
    ver.add_argument("--p", default="2,3,5,7",
                     help="comma-separated primes")
    _add_report_flags(ver)
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, parser)
    except SystemExit as exc:
        if exc.code is None:
            return EXIT_PASS
        return exc.code if isinstance(exc.code, int) else EXIT_BAD_INPUT
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
