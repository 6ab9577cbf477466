"""GraphViz rendering of an argument with suspects highlighted."""

from __future__ import annotations

from ..impact import SuspectSet
from ..model import ArgumentGraph, Element, ElementKind

DIRECT_FILL = "#f28b82"
PROPAGATED_FILL = "#fdd663"

_SHAPES = {
    ElementKind.GOAL: ("box", None),
    ElementKind.STRATEGY: ("parallelogram", None),
    ElementKind.SOLUTION: ("circle", None),
    ElementKind.CONTEXT: ("box", "rounded"),
    ElementKind.ASSUMPTION: ("box", "rounded"),
    ElementKind.JUSTIFICATION: ("box", "rounded"),
}


def _quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def _tooltip(e: Element) -> str | None:
    parts = []
    if e.artifact_refs:
        parts.append("artifacts: " + ", ".join(str(r) for r in e.artifact_refs))
    if e.solution is not None:
        s = e.solution
        parts.append(f"evidence: {s.evidence_id}@{s.evidence_version}")
        parts.append("inputs: " + (", ".join(str(r) for r in s.input_manifest) or "none"))
        parts.append(f"phase: {s.lifecycle_phase}")
        if s.standard_ref:
            parts.append(f"standard: {s.standard_ref}")
    return "\n".join(parts) if parts else None


def render_dot(graph: ArgumentGraph, suspects: SuspectSet | None = None) -> str:
    suspects = suspects or SuspectSet()
    propagated = {p.element for p in suspects.propagated}
    lines = ["digraph gsn {", "  rankdir=TB;", '  node [fontname="Helvetica"];']
    for element_id in sorted(graph.elements):
        e = graph.elements[element_id]
        shape, style = _SHAPES[e.kind]
        attrs = [f"shape={shape}", f"label={_quote(e.id + chr(10) + e.statement)}"]
        fill = None
        if element_id in suspects.directly_flagged:
            fill = DIRECT_FILL
        elif element_id in propagated:
            fill = PROPAGATED_FILL
        styles = [s for s in (style, "filled" if fill else None) if s]
        if styles:
            attrs.append(f"style={_quote(','.join(styles))}")
        if fill:
            attrs.append(f"fillcolor={_quote(fill)}")
        tooltip = _tooltip(e)
        if tooltip:
            attrs.append(f"tooltip={_quote(tooltip)}")
        lines.append(f"  {_quote(element_id)} [{', '.join(attrs)}];")
    for parent, child in graph.supported_by:
        lines.append(f"  {_quote(parent)} -> {_quote(child)};")
    for subject, context in graph.in_context_of:
        lines.append(f"  {_quote(subject)} -> {_quote(context)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
