"""Text and JSON renderings of an ImpactReport."""

from __future__ import annotations

import json
from itertools import groupby

from ..errors import ParseError, SourceLocation
from ..impact import (
    Direction,
    Finding,
    FindingKind,
    ImpactReport,
    InputSummary,
    PropagatedSuspect,
    SuspectSet,
)
from ..version import parse_version

SCHEMA = "gsn-impact-report/1"
NO_FINDINGS = "no findings"


def _finding_line(f: Finding) -> str:
    subject = f.element if f.element is not None else "(registry)"
    line = f"  {subject}: {f.message}"
    if f.standard_ref:
        line += f" [standard: {f.standard_ref}]"
    return line


def render_report_text(report: ImpactReport) -> str:
    lines = ["gsn-impact report"]
    for item in report.inputs:
        lines.append(f"{item.role}: {item.name} (sha256 {item.sha256[:12]})")
    warnings = sum(1 for f in report.findings if f.is_warning)
    lines.append(f"findings: {len(report.findings) - warnings} impact, {warnings} warning")
    if not report.findings:
        lines.append(NO_FINDINGS)
    for kind, group in groupby(report.findings, key=lambda f: f.kind):
        tag = " (warning)" if kind.is_warning else ""
        lines.append("")
        lines.append(f"[{kind.value}]{tag}")
        lines.extend(_finding_line(f) for f in group)

    lines.append("")
    suspects = report.suspects
    if not suspects:
        lines.append("suspects: none")
    else:
        lines.append(f"suspects: {len(suspects.elements())}")
        for element in sorted(suspects.directly_flagged):
            lines.append(f"  {element}: flagged")
        for p in suspects.propagated_sorted():
            lines.append(f"  {p.element}: {p.direction.value.lower()} from {p.cause}")
    return "\n".join(lines) + "\n"


def _finding_data(f: Finding) -> dict:
    return {
        "kind": f.kind.value,
        "element": f.element,
        "artifact": f.artifact,
        "cited": None if f.cited_version is None else str(f.cited_version),
        "current": None if f.current_version is None else str(f.current_version),
        "via": None if f.via is None else list(f.via),
        "message": f.message,
        "warning": f.is_warning,
        "lifecycle_phase": f.lifecycle_phase,
        "standard_ref": f.standard_ref,
    }


def report_data(report: ImpactReport) -> dict:
    return {
        "schema": SCHEMA,
        "inputs": [{"role": i.role, "name": i.name, "sha256": i.sha256} for i in report.inputs],
        "findings": [_finding_data(f) for f in report.findings],
        "suspects": {
            "direct": sorted(report.suspects.directly_flagged),
            "propagated": [
                {"element": p.element, "direction": p.direction.value, "cause": p.cause}
                for p in report.suspects.propagated_sorted()
            ],
        },
        "summary": {
            "impact": sum(1 for f in report.findings if not f.is_warning),
            "warnings": sum(1 for f in report.findings if f.is_warning),
            "suspects": len(report.suspects.elements()),
        },
    }


def render_report_json(report: ImpactReport) -> str:
    return json.dumps(report_data(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_report_json(text: str, source: str = "<report>") -> ImpactReport:
    """Inverse of `render_report_json`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}",
                         SourceLocation(source, exc.lineno, exc.colno)) from None
    here = SourceLocation(source, 1, 1)
    if not isinstance(data, dict) or data.get("schema") != SCHEMA:
        raise ParseError(f"not a {SCHEMA} document", here)

    def version(text):
        return None if text is None else parse_version(text)

    try:
        findings = tuple(
            Finding(
                kind=FindingKind(f["kind"]),
                element=f["element"],
                message=f["message"],
                artifact=f["artifact"],
                cited_version=version(f["cited"]),
                current_version=version(f["current"]),
                via=None if f["via"] is None else tuple(f["via"]),
                lifecycle_phase=f["lifecycle_phase"],
                standard_ref=f["standard_ref"],
            )
            for f in data["findings"]
        )
        suspects = SuspectSet(
            frozenset(data["suspects"]["direct"]),
            frozenset(PropagatedSuspect(p["element"], Direction(p["direction"]), p["cause"])
                      for p in data["suspects"]["propagated"]),
        )
        inputs = tuple(InputSummary(i["role"], i["name"], i["sha256"]) for i in data["inputs"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed report: {exc}", here) from None
    return ImpactReport(findings, suspects, inputs)
