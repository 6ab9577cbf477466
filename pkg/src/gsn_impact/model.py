"""GSN argument graphs carrying artifact-version and evidence annotations."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import networkx as nx

from .errors import UnknownElement
from .version import Version


class ElementKind(enum.Enum):
    GOAL = "Goal"
    STRATEGY = "Strategy"
    SOLUTION = "Solution"
    CONTEXT = "Context"
    ASSUMPTION = "Assumption"
    JUSTIFICATION = "Justification"

    @classmethod
    def parse(cls, text: str) -> ElementKind:
        for kind in cls:
            if kind.value == text:
                return kind
        raise ValueError(f"unknown element kind {text!r}")


SUPPORT_SOURCES = frozenset({ElementKind.GOAL, ElementKind.STRATEGY})
SUPPORT_TARGETS = frozenset({ElementKind.GOAL, ElementKind.STRATEGY, ElementKind.SOLUTION})
CONTEXT_SOURCES = SUPPORT_SOURCES
CONTEXT_TARGETS = frozenset(
    {ElementKind.CONTEXT, ElementKind.ASSUMPTION, ElementKind.JUSTIFICATION}
)


@dataclass(frozen=True)
class ArtifactRef:
    artifact: str
    version: Version

    def __post_init__(self) -> None:
        if not self.artifact:
            raise ValueError("artifact id must be non-empty")

    def __str__(self) -> str:
        return f"{self.artifact}@{self.version}"


@dataclass(frozen=True)
class InputManifest:
    """The (artifact, version) pairs an item of evidence or an artifact was produced from."""

    entries: tuple[ArtifactRef, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        seen: set[str] = set()
        for ref in self.entries:
            if ref.artifact in seen:
                raise ValueError(f"duplicate artifact {ref.artifact!r} in input manifest")
            seen.add(ref.artifact)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, artifact: str) -> Version | None:
        for ref in self.entries:
            if ref.artifact == artifact:
                return ref.version
        return None


@dataclass(frozen=True)
class SolutionAnnotation:
    evidence_id: str
    evidence_version: Version
    input_manifest: InputManifest
    lifecycle_phase: str
    standard_ref: str | None = None

    def __post_init__(self) -> None:
        if not self.evidence_id:
            raise ValueError("evidence_id must be non-empty")
        if not self.lifecycle_phase:
            raise ValueError("lifecycle_phase must be non-empty")


@dataclass(frozen=True)
class Element:
    id: str
    kind: ElementKind
    statement: str
    module: str | None = None
    artifact_refs: tuple[ArtifactRef, ...] = ()
    solution: SolutionAnnotation | None = None

    def __post_init__(self) -> None:
        if not self.id or self.id != self.id.strip():
            raise ValueError(f"invalid element id {self.id!r}")
        object.__setattr__(self, "artifact_refs", tuple(self.artifact_refs))
        if (self.kind is ElementKind.SOLUTION) != (self.solution is not None):
            raise ValueError(
                f"element {self.id}: a solution annotation is required on Solution elements "
                "and forbidden elsewhere"
            )


Edge = tuple[str, str]


@dataclass(frozen=True)
class StructuralViolation:
    """One broken well-formedness rule.

    ``element`` is the primary subject (the lowest id involved), ``members``
    lists every element taking part, e.g. all members of a cycle.
    """

    rule: str
    element: str
    members: tuple[str, ...]
    message: str

    def sort_key(self) -> tuple:
        return (self.rule, self.element, self.members, self.message)

    def __str__(self) -> str:
        return f"{self.rule} {self.element}: {self.message}"


# rule ids; violations sort by these strings
RULE_UNKNOWN_ENDPOINT = "GSN001"
RULE_DUPLICATE_EDGE = "GSN002"
RULE_SUPPORT_SOURCE = "GSN003"
RULE_SUPPORT_TARGET = "GSN004"
RULE_CONTEXT_SOURCE = "GSN005"
RULE_CONTEXT_TARGET = "GSN006"
RULE_SUPPORT_CYCLE = "GSN007"


@dataclass(frozen=True)
class ArgumentGraph:
    elements: Mapping[str, Element] = field(default_factory=dict)
    supported_by: tuple[Edge, ...] = ()
    in_context_of: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        elements = dict(self.elements)
        for key, element in elements.items():
            if key != element.id:
                raise ValueError(f"element keyed {key!r} has id {element.id!r}")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "supported_by", tuple(tuple(e) for e in self.supported_by))
        object.__setattr__(self, "in_context_of", tuple(tuple(e) for e in self.in_context_of))

    @classmethod
    def from_elements(
        cls,
        elements: Iterable[Element],
        supported_by: Iterable[Edge] = (),
        in_context_of: Iterable[Edge] = (),
    ) -> ArgumentGraph:
        index: dict[str, Element] = {}
        for element in elements:
            if element.id in index:
                raise ValueError(f"duplicate element id {element.id!r}")
            index[element.id] = element
        return cls(index, tuple(supported_by), tuple(in_context_of))

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.elements)), self.supported_by, self.in_context_of))

    def __contains__(self, element_id: str) -> bool:
        return element_id in self.elements

    def __getitem__(self, element_id: str) -> Element:
        try:
            return self.elements[element_id]
        except KeyError:
            raise UnknownElement(element_id) from None

    @cached_property
    def _children(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for parent, child in self.supported_by:
            out.setdefault(parent, []).append(child)
        return out

    @cached_property
    def _parents(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for parent, child in self.supported_by:
            out.setdefault(child, []).append(parent)
        return out

    @cached_property
    def _contexts(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for subject, context in self.in_context_of:
            out.setdefault(subject, []).append(context)
        return out

    @cached_property
    def _subjects(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for subject, context in self.in_context_of:
            out.setdefault(context, []).append(subject)
        return out

    def children(self, element_id: str) -> list[str]:
        return list(self._children.get(element_id, ()))

    def parents(self, element_id: str) -> list[str]:
        return list(self._parents.get(element_id, ()))

    def contexts(self, element_id: str) -> list[str]:
        return list(self._contexts.get(element_id, ()))

    def subjects(self, element_id: str) -> list[str]:
        """Elements that are stated in the context of ``element_id``."""
        return list(self._subjects.get(element_id, ()))


def validate_graph(graph: ArgumentGraph) -> list[StructuralViolation]:
    """Check edge endpoints, edge kinds, duplicate edges and support acyclicity.

    Returns violations sorted by rule id, then element id; an empty list
    means the graph is well formed.
    """
    found: list[StructuralViolation] = []
    elements = graph.elements

    def edge_rules(edges, label, sources, targets, source_rule, target_rule):
        seen: set[Edge] = set()
        for src, dst in edges:
            if (src, dst) in seen:
                found.append(StructuralViolation(
                    RULE_DUPLICATE_EDGE, src, (src, dst),
                    f"duplicate {label} edge {src} -> {dst}"))
                continue
            seen.add((src, dst))
            missing = [e for e in (src, dst) if e not in elements]
            for e in missing:
                found.append(StructuralViolation(
                    RULE_UNKNOWN_ENDPOINT, e, (src, dst),
                    f"{label} edge {src} -> {dst} names unknown element {e}"))
            if missing:
                continue
            if elements[src].kind not in sources:
                found.append(StructuralViolation(
                    source_rule, src, (src, dst),
                    f"{label} edge {src} -> {dst} starts at a {elements[src].kind.value}"))
            if elements[dst].kind not in targets:
                found.append(StructuralViolation(
                    target_rule, dst, (src, dst),
                    f"{label} edge {src} -> {dst} ends at a {elements[dst].kind.value}"))

    edge_rules(graph.supported_by, "supported_by", SUPPORT_SOURCES, SUPPORT_TARGETS,
               RULE_SUPPORT_SOURCE, RULE_SUPPORT_TARGET)
    edge_rules(graph.in_context_of, "in_context_of", CONTEXT_SOURCES, CONTEXT_TARGETS,
               RULE_CONTEXT_SOURCE, RULE_CONTEXT_TARGET)

    for members in support_cycles(graph.supported_by):
        found.append(StructuralViolation(
            RULE_SUPPORT_CYCLE, members[0], members,
            "supported_by cycle among " + ", ".join(members)))

    return sorted(found, key=StructuralViolation.sort_key)


def support_cycles(edges: Iterable[Edge]) -> list[tuple[str, ...]]:
    """Sorted member tuples of every strongly connected component that contains a cycle."""
    g = nx.DiGraph()
    g.add_edges_from(edges)
    cycles = []
    for component in nx.strongly_connected_components(g):
        if len(component) > 1:
            cycles.append(tuple(sorted(component)))
        else:
            (node,) = component
            if g.has_edge(node, node):
                cycles.append((node,))
    return sorted(cycles)


def solutions_of(graph: ArgumentGraph) -> list[Element]:
    return [graph.elements[k] for k in sorted(graph.elements)
            if graph.elements[k].kind is ElementKind.SOLUTION]


def _reach(start: str, step) -> set[str]:
    seen: set[str] = set()
    queue = deque(step(start))
    while queue:
        node = queue.popleft()
        if node in seen:
            continue
        seen.add(node)
        queue.extend(step(node))
    seen.discard(start)
    return seen


def ancestors_of(graph: ArgumentGraph, element_id: str) -> set[str]:
    """Every element from which ``element_id`` is reachable over supported_by edges."""
    graph[element_id]
    return _reach(element_id, graph.parents)


def descendants_of(graph: ArgumentGraph, element_id: str) -> set[str]:
    """The supporting argument of ``element_id``.

    Everything reachable over supported_by edges, plus the contextual
    elements attached to ``element_id`` and to every reached element.
    """
    graph[element_id]
    below = _reach(element_id, graph.children)
    for node in [element_id, *below]:
        below.update(graph.contexts(node))
    below.discard(element_id)
    return below
