"""Command line: ``minsing <subcommand> <input> [--format table|json]``.

Exit status 0 on success, 1 on domain errors (invalid graph, unresolved
contacts, ...), 2 when a verification finds a mismatch, 64 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .discriminant import analyze, emit_representative
from .errors import GraphMismatch, MinsingError, ValidationError
from .families import FamilySpec, generate
from .graph import validate_graph
from .oracle import trace_of, verify_class
from .report import (
    Report,
    analysis_table,
    analysis_to_dict,
    discriminant_table,
    export_dot,
    parse_report,
    report_to_dict,
)

EXIT_OK, EXIT_DOMAIN, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# --- subcommands -----------------------------------------------------------

def cmd_validate(args, out):
    try:
        g = validate_graph(_read(args.input))
    except ValidationError as e:
        if args.format == "json":
            out.write(_dump({"valid": False, "error": e.kind, "message": str(e),
                             "vertices": list(e.vertices)}))
        raise
    if args.format == "json":
        out.write(_dump({"valid": True, "vertices": str(len(g)), "edges": str(len(g.edges))}))
    else:
        out.write(f"ok\t{len(g)} vertices\t{len(g.edges)} edges\n")
    return EXIT_OK


def cmd_analyze(args, out):
    a = analyze(validate_graph(_read(args.input)))
    out.write(_dump(analysis_to_dict(a)) if args.format == "json" else analysis_table(a))
    return EXIT_OK


def _report(args) -> Report:
    a = analyze(validate_graph(_read(args.input)))
    rep = None if args.no_representative else emit_representative(a.discriminant)
    return Report(a.graph, a.discriminant, rep)


def cmd_discriminant(args, out):
    r = _report(args)
    out.write(_dump(report_to_dict(r)) if args.format == "json" else discriminant_table(r))
    return EXIT_OK


def cmd_emit_equation(args, out):
    a = analyze(validate_graph(_read(args.input)))
    rep = emit_representative(a.discriminant)
    if args.format == "json":
        out.write(_dump({
            "parametrizations": [dict(b.to_dict(), factor=str(rep.factors[b.id]))
                                 for b in rep.branches],
            "polynomial": rep.polynomial,
        }))
    else:
        out.write(rep.polynomial + "\n")
    return EXIT_OK


def _class_mismatch(claimed, derived) -> str | None:
    ids = lambda c: sorted(b.id for b in c.branches)
    if ids(claimed) != ids(derived):
        return "branch ids differ from the re-derived class"
    by_id = {b.id: b for b in derived.branches}
    for b in claimed.branches:
        if by_id[b.id] != b:
            return f"branch {b.id} differs from the re-derived one"
    for k, c in derived.contacts.items():
        if claimed.contacts.get(k) != c:
            return f"contact{k}: report {claimed.contacts.get(k)} != derived {c}"
    if claimed.invariants != derived.invariants:
        return f"invariants {claimed.invariants} != derived {derived.invariants}"
    return None


def cmd_verify(args, out):
    try:
        data = json.loads(_read(args.input))
    except json.JSONDecodeError as e:
        raise UsageError(f"report is not JSON: {e}") from None
    claimed = parse_report(data)
    derived = analyze(claimed.graph).discriminant
    problem = _class_mismatch(claimed.discriminant, derived)
    if problem is None and claimed.representative is not None:
        result = verify_class(claimed.representative, derived)
        problem = result.first
        if args.trace and problem is None:
            for p1 in claimed.representative.branches:
                for p2 in claimed.representative.branches:
                    if p1.id < p2.id:
                        steps = trace_of(p1, p2)
                        charts = " ".join(
                            f"{s.chart}:{s.slope}" if s.chart else "sep" for s in steps)
                        out.write(f"trace\t{p1.id}\t{p2.id}\t{charts}\n")
    if problem:
        raise GraphMismatch(problem)
    pairs = len(derived.contacts)
    if args.format == "json":
        out.write(_dump({"verified": True, "pairs": str(pairs)}))
    else:
        out.write(f"verified\t{len(derived.branches)} branches\t{pairs} pairs\n")
    return EXIT_OK


def cmd_export_dot(args, out):
    a = analyze(validate_graph(_read(args.input)))
    out.write(export_dot(a.graph, a.depths, a.counts))
    return EXIT_OK


def cmd_family(args, out):
    if args.variant == "star":
        try:
            params = tuple(int(p) for p in args.params[0].split(",")) if len(args.params) == 1 else None
        except ValueError:
            params = None
        if params is None:
            raise UsageError("family star takes one argument a,b,c,...")
    else:
        try:
            params = tuple(int(p) for p in args.params)
        except ValueError:
            raise UsageError("family parameters must be integers") from None
    g = generate(FamilySpec(args.variant, params))
    out.write(g.to_text() if args.format == "table" else _dump(g.to_dict()))
    return EXIT_OK


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minsing", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help, input_help="graph file (JSON or text), '-' for stdin"):
        p = sub.add_parser(name, help=help)
        p.add_argument("input", help=input_help)
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.set_defaults(fn=fn)
        return p

    add("validate", cmd_validate, "check that a graph is a minimal resolution graph")
    add("analyze", cmd_analyze, "depths, vertex classes and branch counts")
    p = add("discriminant", cmd_discriminant, "discriminant branches, contacts and invariants")
    p.add_argument("--no-representative", action="store_true",
                   help="skip the explicit plane curve")
    add("emit-equation", cmd_emit_equation, "explicit plane curve in the discriminant class")
    p = add("verify", cmd_verify, "re-derive a discriminant report and check it with the oracle",
            input_help="discriminant report (JSON), '-' for stdin")
    p.add_argument("--trace", action="store_true", help="dump blow-up charts for every pair")
    add("export-dot", cmd_export_dot, "Graphviz rendering of the analyzed graph")

    p = sub.add_parser("family", help="generate a graph of a standard family")
    p.add_argument("variant", choices=("an", "cone", "cyclic", "star"))
    p.add_argument("params", nargs="+", help="n | n | n q | a,b,c,...")
    p.add_argument("--format", choices=("table", "json"), default="json")
    p.set_defaults(fn=cmd_family)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.fn(args, out)
    except UsageError as e:
        print(f"minsing: error: {e}", file=err)
        return EXIT_USAGE
    except GraphMismatch as e:
        print(f"mismatch: {e}", file=err)
        return EXIT_MISMATCH
    except ValidationError as e:
        where = f" (vertices: {', '.join(e.vertices)})" if e.vertices else ""
        print(f"{e.kind}: {e}{where}", file=err)
        return EXIT_DOMAIN
    except MinsingError as e:
        print(f"{type(e).__name__}: {e}", file=err)
        return EXIT_DOMAIN


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
