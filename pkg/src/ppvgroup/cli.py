"""Command-line driver: ``ppvgroup {compute,classify,selfcheck,example}``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import __version__
from .catalog import EXAMPLES, example
from .engine.pipeline import run_pipeline
from .io.parser import ParseError
from .io.report import DocumentError, dumps, load_input, render_report_text, report_to_dict
from .riccati.classify import classify_case

EXIT_OK, EXIT_ERROR, EXIT_PARTIAL = 0, 1, 2


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would read as a partial result
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", "-i", help="input JSON document ('-' for stdin)")
    p.add_argument("--a1", help="inline coefficient a1")
    p.add_argument("--a0", help="inline coefficient a0")
    p.add_argument("--params", default="", help="comma-separated parameter names for inline input")
    p.add_argument("--output", "-o", help="output path (default: stdout)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--max-theta-order", type=int)
    p.add_argument("--finite-order-bound", type=int)
    p.add_argument("--lattice-bound", type=int)
    p.add_argument("--assume", action="append", default=[], metavar="TEXT",
                   help="record an extra genericity assumption (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ppvgroup", description=__doc__)
    ap.add_argument("--version", action="version", version=f"ppvgroup {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add_input(sub.add_parser("compute", help="compute the group and write a report"))
    _add_input(sub.add_parser("classify", help="print the case and the Riccati data"))
    sc = sub.add_parser("selfcheck", help="run the built-in invariant suite")
    sc.add_argument("--seed", type=int, default=0)
    sc.add_argument("--count", type=int, default=20)
    ex = sub.add_parser("example", help="print a built-in input document")
    ex.add_argument("name", nargs="?", help="example name; omit to list")
    ex.add_argument("--output", "-o")
    return ap


def _read_document(args) -> dict:
    if args.input:
        if args.a1 or args.a0:
            raise CliError("give either --input or --a1/--a0, not both")
        try:
            text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
        except OSError as exc:
            raise CliError(f"cannot read {args.input}: {exc.strerror}") from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(f"{args.input}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    elif args.a1 is not None and args.a0 is not None:
        params = [p.strip() for p in args.params.split(",") if p.strip()]
        doc = {"parameters": params, "equation": {"a1": args.a1, "a0": args.a0}}
    else:
        raise CliError("no input: use --input FILE or --a1 EXPR --a0 EXPR")
    if isinstance(doc, dict):
        opts = dict(doc.get("options") or {})
        for flag, key in (("max_theta_order", "max_theta_order"),
                          ("finite_order_bound", "finite_order_bound"),
                          ("lattice_bound", "lattice_search_bound")):
            v = getattr(args, flag)
            if v is not None:
                opts[key] = v
        if args.assume:
            opts["assume"] = list(opts.get("assume", [])) + args.assume
        doc["options"] = opts
    return doc


def _write(text: str, path: Optional[str]) -> None:
    if path:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(f"cannot write {path}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def cmd_compute(args) -> int:
    _, a1, a0, opts = load_input(_read_document(args))
    rep = run_pipeline(a1, a0, opts)
    text = dumps(report_to_dict(rep)) if args.format == "json" else render_report_text(rep)
    _write(text, args.output)
    return EXIT_OK if rep.complete else EXIT_PARTIAL


def cmd_classify(args) -> int:
    from .engine.pipeline import normalize_equation

    _, a1, a0, _ = load_input(_read_document(args))
    q = normalize_equation(a1, a0)[2]
    tag = classify_case(q)
    if args.format == "json":
        doc = {"case": tag.kind, "q": str(q)}
        if tag.kind == "I":
            doc["riccati_solutions"] = [str(u) for u in tag.solutions]
        elif tag.kind == "II":
            doc.update(w2=str(tag.quadratic.w2), v=str(tag.quadratic.v))
        elif tag.kind == "III":
            doc.update(finite_group=tag.group_label, minimal_polynomial=[str(c) for c in tag.finite.minpoly])
        text = dumps(doc)
    else:
        lines = [f"Case {tag.kind}"]
        lines += [f"u = {u}" for u in tag.solutions]
        if tag.kind == "II":
            lines += [f"w^2 = {tag.quadratic.w2}", f"v = {tag.quadratic.v}"]
        if tag.kind == "III":
            lines.append(f"finite group {tag.group_label}^SL2")
        text = "\n".join(lines) + "\n"
    _write(text, args.output)
    return EXIT_OK if tag.complete else EXIT_PARTIAL


def cmd_selfcheck(args) -> int:
    from .selfcheck import run_selfcheck

    results = run_selfcheck(args.seed, args.count)
    failed = 0
    for r in results:
        status = "ok" if not r.failed else "FAIL"
        print(f"{status:4}  {r.name}: {r.passed} passed, {r.failed} failed")
        for f in r.failures[:5]:
            print(f"      {f}")
        failed += r.failed
    print(f"total: {sum(r.passed for r in results)} passed, {failed} failed")
    return EXIT_ERROR if failed else EXIT_OK


def cmd_example(args) -> int:
    if not args.name:
        print("\n".join(sorted(EXAMPLES)))
        return EXIT_OK
    try:
        doc = example(args.name)
    except KeyError as exc:
        raise CliError(exc.args[0]) from None
    _write(dumps(doc), args.output)
    return EXIT_OK


COMMANDS = {"compute": cmd_compute, "classify": cmd_classify,
            "selfcheck": cmd_selfcheck, "example": cmd_example}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (CliError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        cause = exc.__cause__
        if isinstance(cause, ParseError):
            print(cause.pointer(), file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
