"""Reading and writing argument (``*.gsn.yaml``), registry (``*.reg.yaml``)
and change-scenario (``*.chg.yaml``) documents."""

from __future__ import annotations

import yaml
from yaml.nodes import Node

from ..errors import (
    DuplicateId,
    MalformedVersion,
    MissingSolutionAnnotation,
    ParseError,
    SourceLocation,
    UnexpectedSolutionAnnotation,
    UnknownKind,
)
from ..model import (
    ArgumentGraph,
    ArtifactRef,
    Element,
    ElementKind,
    InputManifest,
    SolutionAnnotation,
)
from ..registry import ArtifactRecord, ArtifactRegistry, ChangeScenario
from ..version import Version, parse_version
from ._yaml import Reader

_Dumper = getattr(yaml, "CSafeDumper", yaml.SafeDumper)

_ELEMENT_KEYS = {"id", "kind", "statement", "module", "artifact_refs", "evidence"}
_EVIDENCE_KEYS = {"evidence_id", "evidence_version", "lifecycle_phase", "standard_ref",
                  "input_manifest"}
_REF_KEYS = {"artifact", "version"}


def _version(r: Reader, node: Node, what: str) -> Version:
    text = r.string(node, what)
    try:
        return parse_version(text)
    except MalformedVersion:
        raise MalformedVersion(text, r.loc(node)) from None


def _ref(r: Reader, node: Node, what: str) -> ArtifactRef:
    fields = r.mapping(node, what, _REF_KEYS, _REF_KEYS)
    artifact = r.string(fields["artifact"][1], f"{what} artifact")
    return ArtifactRef(artifact, _version(r, fields["version"][1], f"{what} version"))


def _manifest(r: Reader, node: Node, what: str) -> InputManifest:
    refs = []
    seen: set[str] = set()
    for item in r.sequence(node, what):
        ref = _ref(r, item, f"{what} entry")
        if ref.artifact in seen:
            r.fail(item, f"{what}: artifact {ref.artifact!r} listed twice")
        seen.add(ref.artifact)
        refs.append(ref)
    return InputManifest(tuple(refs))


def _edges(r: Reader, node: Node, what: str, where: dict) -> tuple[tuple[str, str], ...]:
    edges = []
    for item in r.sequence(node, what):
        pair = r.sequence(item, f"{what} edge")
        if len(pair) != 2:
            r.fail(item, f"{what} edge must be a [from, to] pair")
        edge = (r.string(pair[0], f"{what} edge end"), r.string(pair[1], f"{what} edge end"))
        where[edge] = r.loc(item)
        edges.append(edge)
    return tuple(edges)


def _element(r: Reader, node: Node) -> Element:
    fields = r.mapping(node, "element", _ELEMENT_KEYS, {"id", "kind", "statement"})
    id_node = fields["id"][1]
    element_id = r.string(id_node, "element id")
    if element_id != element_id.strip():
        r.fail(id_node, f"element id {element_id!r} has surrounding whitespace")
    kind_node = fields["kind"][1]
    kind_text = r.string(kind_node, "element kind")
    try:
        kind = ElementKind.parse(kind_text)
    except ValueError:
        r.fail(kind_node, f"unknown element kind {kind_text!r}", UnknownKind)
    statement = r.string(fields["statement"][1], "statement", allow_empty=True)
    module = r.optional_string(fields["module"][1], "module") if "module" in fields else None
    refs = ()
    if "artifact_refs" in fields:
        refs = tuple(_ref(r, item, "artifact_refs entry")
                     for item in r.sequence(fields["artifact_refs"][1], "artifact_refs"))

    solution = None
    if "evidence" in fields:
        key_node, ev_node = fields["evidence"]
        if kind is not ElementKind.SOLUTION:
            r.fail(key_node, f"{kind.value} {element_id} must not carry evidence",
                   UnexpectedSolutionAnnotation)
        ev = r.mapping(ev_node, "evidence", _EVIDENCE_KEYS, _EVIDENCE_KEYS - {"standard_ref"})
        solution = SolutionAnnotation(
            evidence_id=r.string(ev["evidence_id"][1], "evidence_id"),
            evidence_version=_version(r, ev["evidence_version"][1], "evidence_version"),
            input_manifest=_manifest(r, ev["input_manifest"][1], "input_manifest"),
            lifecycle_phase=r.string(ev["lifecycle_phase"][1], "lifecycle_phase"),
            standard_ref=(r.optional_string(ev["standard_ref"][1], "standard_ref")
                          if "standard_ref" in ev else None),
        )
    elif kind is ElementKind.SOLUTION:
        r.fail(node, f"Solution {element_id} needs an evidence annotation",
               MissingSolutionAnnotation)

    return Element(element_id, kind, statement, module, refs, solution)


def parse_argument(text: str, source: str = "<argument>") -> ArgumentGraph:
    """Parse an argument document into an ArgumentGraph.

    Structural rules (edge kinds, cycles, dangling edges) are left to
    `validate_graph`; this only enforces document shape and field values.
    """
    return parse_argument_located(text, source)[0]


def parse_argument_located(text: str, source: str = "<argument>"
                           ) -> tuple[ArgumentGraph, dict[object, SourceLocation]]:
    """Like `parse_argument`, also returning where things were written.

    Keys are element ids and ``(parent, child)`` / ``(subject, context)``
    edge tuples; a repeated edge maps to its last occurrence.
    """
    r = Reader(text, source)
    where: dict[object, SourceLocation] = {}
    root = r.compose()
    if root is None:
        return ArgumentGraph(), where
    top = r.mapping(root, "argument document", {"elements", "supported_by", "in_context_of"})
    elements: dict[str, Element] = {}
    if "elements" in top:
        for item in r.sequence(top["elements"][1], "elements"):
            element = _element(r, item)
            if element.id in elements:
                r.fail(item, f"duplicate element id {element.id!r}", DuplicateId)
            elements[element.id] = element
            where[element.id] = r.loc(item)
    edges = {}
    for label in ("supported_by", "in_context_of"):
        edges[label] = _edges(r, top[label][1], label, where) if label in top else ()
    return ArgumentGraph(elements, edges["supported_by"], edges["in_context_of"]), where


def parse_registry(text: str, source: str = "<registry>") -> ArtifactRegistry:
    return parse_registry_located(text, source)[0]


def parse_registry_located(text: str, source: str = "<registry>"
                           ) -> tuple[ArtifactRegistry, dict[str, SourceLocation]]:
    r = Reader(text, source)
    where: dict[str, SourceLocation] = {}
    root = r.compose()
    if root is None:
        return ArtifactRegistry(), where
    top = r.mapping(root, "registry document", {"artifacts"})
    records: dict[str, ArtifactRecord] = {}
    for item in r.sequence(top["artifacts"][1], "artifacts") if "artifacts" in top else ():
        fields = r.mapping(item, "artifact", {"artifact", "version", "produced_from"},
                           {"artifact", "version"})
        name = r.string(fields["artifact"][1], "artifact")
        if name in records:
            r.fail(item, f"duplicate artifact {name!r}", DuplicateId)
        version = _version(r, fields["version"][1], "version")
        produced_from = InputManifest()
        if "produced_from" in fields:
            produced_from = _manifest(r, fields["produced_from"][1], "produced_from")
            if produced_from.get(name) is not None:
                r.fail(fields["produced_from"][1], f"artifact {name!r} is listed as its own input")
        records[name] = ArtifactRecord(name, version, produced_from)
        where[name] = r.loc(item)
    return ArtifactRegistry(records), where


def parse_scenario(text: str, source: str = "<changes>") -> ChangeScenario:
    r = Reader(text, source)
    root = r.compose()
    if root is None:
        return ChangeScenario()
    top = r.mapping(root, "change document", {"changes"})
    changes = []
    seen: set[str] = set()
    for item in r.sequence(top["changes"][1], "changes") if "changes" in top else ():
        ref = _ref(r, item, "change")
        if ref.artifact in seen:
            r.fail(item, f"artifact {ref.artifact!r} changed twice", ParseError)
        seen.add(ref.artifact)
        changes.append(ref)
    return ChangeScenario(tuple(changes))


# --- writers -------------------------------------------------------------

def _dump(data) -> str:
    return yaml.dump(data, Dumper=_Dumper, sort_keys=False, default_flow_style=False,
                     allow_unicode=True, width=100)


def _refs_data(refs) -> list[dict]:
    return [{"artifact": ref.artifact, "version": str(ref.version)} for ref in refs]


def render_argument(graph: ArgumentGraph) -> str:
    """Write ``graph`` as an argument document, elements in id order."""
    elements = []
    for element_id in sorted(graph.elements):
        e = graph.elements[element_id]
        item: dict = {"id": e.id, "kind": e.kind.value, "statement": e.statement}
        if e.module is not None:
            item["module"] = e.module
        if e.artifact_refs:
            item["artifact_refs"] = _refs_data(e.artifact_refs)
        if e.solution is not None:
            ev: dict = {
                "evidence_id": e.solution.evidence_id,
                "evidence_version": str(e.solution.evidence_version),
                "lifecycle_phase": e.solution.lifecycle_phase,
            }
            if e.solution.standard_ref is not None:
                ev["standard_ref"] = e.solution.standard_ref
            ev["input_manifest"] = _refs_data(e.solution.input_manifest)
            item["evidence"] = ev
        elements.append(item)
    return _dump({
        "elements": elements,
        "supported_by": [list(edge) for edge in graph.supported_by],
        "in_context_of": [list(edge) for edge in graph.in_context_of],
    })


def render_registry(reg: ArtifactRegistry) -> str:
    artifacts = []
    for name in sorted(reg.records):
        record = reg.records[name]
        item: dict = {"artifact": name, "version": str(record.current_version)}
        if len(record.produced_from):
            item["produced_from"] = _refs_data(record.produced_from)
        artifacts.append(item)
    return _dump({"artifacts": artifacts})


def render_scenario(scenario: ChangeScenario) -> str:
    return _dump({"changes": _refs_data(scenario.changes)})
