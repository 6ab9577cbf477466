"""Command-line entry point.

Usage:
    gsn-impact validate <argument> [<registry>]
    gsn-impact check --argument <arg> --registry <reg> [--changes <chg>]
                     [--transitive] [--format text|json] [--dot <path>]

Exit status: 0 clean, 1 impact findings present, 2 usage, parse or
structural error. Warnings never change the exit status. Standard output
carries only the report; diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from .errors import GsnImpactError, SourceLocation
from .formats import parse_scenario, render_dot, render_report_json, render_report_text
from .formats.documents import parse_argument_located, parse_registry_located
from .impact import InputSummary, run_all
from .model import RULE_SUPPORT_CYCLE, StructuralViolation, validate_graph
from .registry import RULE_PROVENANCE_CYCLE, registry_warnings, validate_registry

EXIT_CLEAN = 0
EXIT_FINDINGS = 1
EXIT_ERROR = 2


class _Abort(Exception):
    pass


def _error(message: str, where: object = None) -> None:
    prefix = f"{where}: " if where is not None else ""
    print(f"{prefix}error: {message}", file=sys.stderr)


def _read(path: str) -> str:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        _error(f"cannot read file: {exc.strerror or exc}", path)
        raise _Abort from None
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        column = exc.start - (data.rfind(b"\n", 0, exc.start) + 1) + 1
        _error("file is not valid UTF-8", SourceLocation(path, line, column))
        raise _Abort from None


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _parse(parser, path: str):
    text = _read(path)
    try:
        return text, parser(text, path)
    except GsnImpactError as exc:
        _error(exc.message, exc.location or path)
        raise _Abort from None


_CYCLE_RULES = {RULE_SUPPORT_CYCLE, RULE_PROVENANCE_CYCLE}


def _locate(violation: StructuralViolation, where: dict, path: str) -> str:
    # edge rules point at the edge, cycles at their lowest member
    loc = None
    if violation.rule not in _CYCLE_RULES and len(violation.members) == 2:
        loc = where.get(violation.members)
    if loc is None:
        loc = where.get(violation.element)
    return str(loc) if isinstance(loc, SourceLocation) else path


def _report_violations(violations, where, path, label="error") -> None:
    for v in violations:
        print(f"{_locate(v, where, path)}: {label}: {v.rule} {v.message}", file=sys.stderr)


def _load_argument(path: str):
    text, (graph, where) = _parse(parse_argument_located, path)
    violations = validate_graph(graph)
    _report_violations(violations, where, path)
    return text, graph, bool(violations)


def _load_registry(path: str):
    text, (reg, where) = _parse(parse_registry_located, path)
    violations = validate_registry(reg)
    _report_violations(violations, where, path)
    _report_violations(registry_warnings(reg), where, path, label="warning")
    return text, reg, bool(violations)


def cmd_validate(args: argparse.Namespace) -> int:
    _, _, bad = _load_argument(args.argument)
    if args.registry is not None:
        _, _, reg_bad = _load_registry(args.registry)
        bad = bad or reg_bad
    return EXIT_ERROR if bad else EXIT_CLEAN


def cmd_check(args: argparse.Namespace) -> int:
    arg_text, graph, bad = _load_argument(args.argument)
    reg_text, reg, reg_bad = _load_registry(args.registry)
    inputs = [InputSummary("argument", Path(args.argument).name, _digest(arg_text)),
              InputSummary("registry", Path(args.registry).name, _digest(reg_text))]
    scenario = None
    if args.changes is not None:
        chg_text, scenario = _parse(parse_scenario, args.changes)
        inputs.append(InputSummary("changes", Path(args.changes).name, _digest(chg_text)))
    if bad or reg_bad:
        return EXIT_ERROR

    try:
        report = run_all(graph, reg, scenario, transitive=args.transitive, inputs=inputs)
    except GsnImpactError as exc:
        _error(exc.message, args.registry)
        return EXIT_ERROR

    rendered = render_report_json(report) if args.format == "json" else render_report_text(report)
    if args.dot is not None:
        try:
            Path(args.dot).write_text(render_dot(graph, report.suspects), encoding="utf-8")
        except OSError as exc:
            _error(f"cannot write DOT file: {exc.strerror or exc}", args.dot)
            return EXIT_ERROR
    sys.stdout.write(rendered)
    return EXIT_FINDINGS if report.has_impact else EXIT_CLEAN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsn-impact",
        description="Change impact analysis for annotated GSN safety arguments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="parse and structurally validate inputs")
    validate.add_argument("argument", help="argument document (*.gsn.yaml)")
    validate.add_argument("registry", nargs="?", help="artifact registry (*.reg.yaml)")
    validate.set_defaults(func=cmd_validate)

    check = sub.add_parser("check", help="run the impact analysis and print a report")
    check.add_argument("--argument", required=True, help="argument document (*.gsn.yaml)")
    check.add_argument("--registry", required=True, help="artifact registry (*.reg.yaml)")
    check.add_argument("--changes", help="change scenario (*.chg.yaml)")
    check.add_argument("--transitive", action="store_true",
                       help="follow registry provenance to indirect inputs")
    check.add_argument("--format", choices=("text", "json"), default="text")
    check.add_argument("--dot", metavar="PATH", help="also write a GraphViz rendering to PATH")
    check.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_CLEAN
    try:
        return args.func(args)
    except _Abort:
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
