"""Impact engine: staleness checks over annotated arguments and suspicion propagation."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .model import (
    ArgumentGraph,
    ElementKind,
    ancestors_of,
    descendants_of,
    solutions_of,
)
from .registry import (
    ArtifactRegistry,
    ChangeScenario,
    ClosureEntry,
    apply_scenario,
    manifest_closure,
)
from .version import Version


class FindingKind(enum.Enum):
    DUPLICATE_EVIDENCE_VERSION = "DuplicateEvidenceVersion"
    STALE_MANIFEST_ENTRY = "StaleManifestEntry"
    STALE_MANIFEST_ENTRY_TRANSITIVE = "StaleManifestEntryTransitive"
    CHANGED_ARTIFACT_HIT = "ChangedArtifactHit"
    STALE_ARTIFACT_REF = "StaleArtifactRef"
    VERSION_AMBIGUITY = "VersionAmbiguity"
    DOWNGRADE = "Downgrade"
    UNKNOWN_ARTIFACT = "UnknownArtifact"

    @property
    def is_warning(self) -> bool:
        return self in WARNING_KINDS

    @property
    def rank(self) -> int:
        return _KIND_RANK[self]


WARNING_KINDS = frozenset({
    FindingKind.VERSION_AMBIGUITY, FindingKind.DOWNGRADE, FindingKind.UNKNOWN_ARTIFACT,
})
_KIND_RANK = {kind: i for i, kind in enumerate(FindingKind)}


@dataclass(frozen=True)
class Finding:
    """One detected impact.

    ``element`` is None only for registry-side warnings (Downgrade). For
    DuplicateEvidenceVersion, ``artifact`` holds the evidence id.
    """

    kind: FindingKind
    element: str | None
    message: str
    artifact: str | None = None
    cited_version: Version | None = None
    current_version: Version | None = None
    via: tuple[str, ...] | None = None
    lifecycle_phase: str | None = None
    standard_ref: str | None = None

    @property
    def is_warning(self) -> bool:
        return self.kind.is_warning

    def dedup_key(self) -> tuple:
        return (self.kind, self.element, self.artifact, self.cited_version, self.current_version)

    def sort_key(self) -> tuple:
        def v(x: Version | None):
            return (0,) if x is None else (1, x.components)
        return (
            self.kind.rank,
            self.element or "",
            self.artifact or "",
            v(self.cited_version),
            v(self.current_version),
            self.via or (),
            self.message,
        )


class Direction(enum.Enum):
    UPWARD = "Upward"
    DOWNWARD = "Downward"


@dataclass(frozen=True)
class PropagatedSuspect:
    element: str
    direction: Direction
    cause: str

    def _key(self) -> tuple[str, str, str]:
        return (self.element, self.direction.value, self.cause)


@dataclass(frozen=True)
class SuspectSet:
    directly_flagged: frozenset[str] = frozenset()
    propagated: frozenset[PropagatedSuspect] = frozenset()

    def elements(self) -> set[str]:
        return set(self.directly_flagged) | {p.element for p in self.propagated}

    def propagated_sorted(self) -> list[PropagatedSuspect]:
        return sorted(self.propagated, key=PropagatedSuspect._key)

    def __bool__(self) -> bool:
        return bool(self.directly_flagged or self.propagated)


@dataclass(frozen=True)
class InputSummary:
    """Identifies one input document of a run: role, file name and content digest."""

    role: str
    name: str
    sha256: str


@dataclass(frozen=True)
class ImpactReport:
    findings: tuple[Finding, ...] = ()
    suspects: SuspectSet = field(default_factory=SuspectSet)
    inputs: tuple[InputSummary, ...] = ()

    @property
    def has_impact(self) -> bool:
        return any(not f.is_warning for f in self.findings)

    def count(self, kind: FindingKind) -> int:
        return sum(1 for f in self.findings if f.kind is kind)


def sort_findings(findings: Iterable[Finding]) -> list[Finding]:
    return sorted(findings, key=Finding.sort_key)


def _vs(versions: Iterable[Version]) -> str:
    return ", ".join(str(v) for v in versions)


def check_duplicate_evidence(graph: ArgumentGraph) -> list[Finding]:
    """Flag every solution citing an evidence item that is cited elsewhere at another version."""
    cited: dict[str, list] = {}
    for sol in solutions_of(graph):
        cited.setdefault(sol.solution.evidence_id, []).append(sol)
    findings = []
    for evidence_id, sols in sorted(cited.items()):
        versions = sorted({s.solution.evidence_version for s in sols})
        if len(sols) < 2 or len(versions) < 2:
            continue
        for sol in sols:
            ann = sol.solution
            findings.append(Finding(
                FindingKind.DUPLICATE_EVIDENCE_VERSION, sol.id,
                f"evidence {evidence_id} cited at version {ann.evidence_version}; "
                f"versions in this argument: {_vs(versions)}",
                artifact=evidence_id,
                cited_version=ann.evidence_version,
                lifecycle_phase=ann.lifecycle_phase,
                standard_ref=ann.standard_ref,
            ))
    return sort_findings(findings)


def _manifest_entries(reg, manifest, transitive):
    if transitive:
        closure = manifest_closure(reg, manifest)
        return list(closure.entries), closure.ambiguities
    return [ClosureEntry(ref.artifact, ref.version) for ref in manifest], ()


def _stale_message(entry: ClosureEntry, current: Version, prefix: str) -> str:
    text = f"{prefix} {entry.artifact} {entry.version}, current version is {current}"
    if entry.via:
        text += " (via " + " -> ".join(entry.via) + ")"
    return text


def check_stale_manifests(
    graph: ArgumentGraph, reg: ArtifactRegistry, transitive: bool = False
) -> list[Finding]:
    """Flag solutions whose input manifest cites an artifact at a version older than the registry's."""
    findings = []
    for sol in solutions_of(graph):
        ann = sol.solution
        extra = dict(lifecycle_phase=ann.lifecycle_phase, standard_ref=ann.standard_ref)
        entries, ambiguities = _manifest_entries(reg, ann.input_manifest, transitive)
        for entry in entries:
            current = reg.current(entry.artifact)
            if current is None:
                findings.append(Finding(
                    FindingKind.UNKNOWN_ARTIFACT, sol.id,
                    f"input {entry.artifact} {entry.version} is not in the registry",
                    artifact=entry.artifact, cited_version=entry.version,
                    via=entry.via or None, **extra))
            elif current > entry.version:
                if entry.via:
                    findings.append(Finding(
                        FindingKind.STALE_MANIFEST_ENTRY_TRANSITIVE, sol.id,
                        _stale_message(entry, current, "indirect input"),
                        artifact=entry.artifact, cited_version=entry.version,
                        current_version=current, via=entry.via, **extra))
                else:
                    findings.append(Finding(
                        FindingKind.STALE_MANIFEST_ENTRY, sol.id,
                        _stale_message(entry, current, "input manifest cites"),
                        artifact=entry.artifact, cited_version=entry.version,
                        current_version=current, **extra))
        for amb in ambiguities:
            findings.append(Finding(
                FindingKind.VERSION_AMBIGUITY, sol.id,
                f"{amb.artifact} is reached at versions {_vs(amb.versions)}",
                artifact=amb.artifact, **extra))
    return sort_findings(findings)


def downgrades(reg: ArtifactRegistry, scenario: ChangeScenario) -> list[Finding]:
    found = []
    for change in scenario.changes:
        old = reg.current(change.artifact)
        if old is not None and change.version < old:
            found.append(Finding(
                FindingKind.DOWNGRADE, None,
                f"change lowers {change.artifact} from {old} to {change.version}",
                artifact=change.artifact, cited_version=old, current_version=change.version))
    return found


def check_changed_artifacts(
    graph: ArgumentGraph,
    reg: ArtifactRegistry,
    scenario: ChangeScenario,
    transitive: bool = False,
) -> list[Finding]:
    """Search manifests for old versions of the artifacts a scenario changes."""
    updated = apply_scenario(reg, scenario)
    changed = scenario.artifacts
    findings = downgrades(reg, scenario)
    for sol in solutions_of(graph):
        ann = sol.solution
        entries, _ = _manifest_entries(updated, ann.input_manifest, transitive)
        for entry in entries:
            if entry.artifact not in changed:
                continue
            current = updated.current(entry.artifact)
            if current > entry.version:
                findings.append(Finding(
                    FindingKind.CHANGED_ARTIFACT_HIT, sol.id,
                    _stale_message(entry, current, "changed artifact cited as"),
                    artifact=entry.artifact, cited_version=entry.version,
                    current_version=current, via=entry.via or None,
                    lifecycle_phase=ann.lifecycle_phase, standard_ref=ann.standard_ref))
    return sort_findings(findings)


def check_artifact_refs(graph: ArgumentGraph, reg: ArtifactRegistry) -> list[Finding]:
    """Flag artifact-version annotations older than the registry's current version."""
    findings = []
    for element_id in sorted(graph.elements):
        for ref in graph.elements[element_id].artifact_refs:
            current = reg.current(ref.artifact)
            if current is None:
                findings.append(Finding(
                    FindingKind.UNKNOWN_ARTIFACT, element_id,
                    f"artifact reference {ref.artifact} {ref.version} is not in the registry",
                    artifact=ref.artifact, cited_version=ref.version))
            elif current > ref.version:
                findings.append(Finding(
                    FindingKind.STALE_ARTIFACT_REF, element_id,
                    f"refers to {ref.artifact} {ref.version}, current version is {current}",
                    artifact=ref.artifact, cited_version=ref.version, current_version=current))
    return sort_findings(findings)


_PROPAGATES_DOWN = frozenset({ElementKind.GOAL, ElementKind.STRATEGY})


def propagate_suspicion(graph: ArgumentGraph, findings: Iterable[Finding]) -> SuspectSet:
    """Spread suspicion from flagged elements through the argument.

    Solutions mark their ancestors Upward. Goals and strategies mark their
    ancestors Upward and their supporting argument Downward. Contextual
    elements mark the elements stated in their context, and those elements'
    ancestors, Upward. Warnings do not propagate.
    """
    direct = {f.element for f in findings
              if not f.is_warning and f.element is not None and f.element in graph}
    propagated: set[PropagatedSuspect] = set()
    for cause in sorted(direct):
        kind = graph.elements[cause].kind
        up = set(ancestors_of(graph, cause))
        if kind in _PROPAGATES_DOWN:
            for node in descendants_of(graph, cause):
                propagated.add(PropagatedSuspect(node, Direction.DOWNWARD, cause))
        elif kind is not ElementKind.SOLUTION:
            for subject in graph.subjects(cause):
                up.add(subject)
                up |= ancestors_of(graph, subject)
        for node in up:
            propagated.add(PropagatedSuspect(node, Direction.UPWARD, cause))
    propagated = {p for p in propagated if p.element not in direct}
    return SuspectSet(frozenset(direct), frozenset(propagated))


def _dedup(findings: Iterable[Finding]) -> list[Finding]:
    kept: dict[tuple, Finding] = {}
    for f in sort_findings(findings):
        kept.setdefault(f.dedup_key(), f)
    return sort_findings(kept.values())


def run_all(
    graph: ArgumentGraph,
    reg: ArtifactRegistry,
    scenario: ChangeScenario | None = None,
    transitive: bool = False,
    inputs: Iterable[InputSummary] = (),
) -> ImpactReport:
    """Run every check and assemble a deterministic report.

    With a scenario, the manifest and artifact-reference checks see the
    post-change registry, and stale-manifest findings already reported as
    ChangedArtifactHit are not repeated.
    """
    findings = check_duplicate_evidence(graph)
    current = reg
    hits: list[Finding] = []
    if scenario is not None:
        hits = check_changed_artifacts(graph, reg, scenario, transitive)
        current = apply_scenario(reg, scenario)
    covered = {(h.element, h.artifact, h.cited_version, h.current_version) for h in hits
               if h.kind is FindingKind.CHANGED_ARTIFACT_HIT}
    for f in check_stale_manifests(graph, current, transitive):
        if (f.element, f.artifact, f.cited_version, f.current_version) in covered:
            continue
        findings.append(f)
    findings.extend(hits)
    findings.extend(check_artifact_refs(graph, current))
    findings = _dedup(findings)
    return ImpactReport(
        findings=tuple(findings),
        suspects=propagate_suspicion(graph, findings),
        inputs=tuple(inputs),
    )
