"""Artifact registry: current versions, provenance, change scenarios and manifest closure."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import ProvenanceCycle
from .model import ArtifactRef, InputManifest, StructuralViolation, support_cycles
from .version import Version

RULE_PROVENANCE_CYCLE = "REG001"
RULE_UNREGISTERED_INPUT = "REG101"


@dataclass(frozen=True)
class ArtifactRecord:
    artifact: str
    current_version: Version
    produced_from: InputManifest = field(default_factory=InputManifest)

    def __post_init__(self) -> None:
        if not self.artifact:
            raise ValueError("artifact id must be non-empty")
        if self.produced_from.get(self.artifact) is not None:
            raise ValueError(f"artifact {self.artifact!r} is listed as its own input")


@dataclass(frozen=True)
class ArtifactRegistry:
    records: Mapping[str, ArtifactRecord] = field(default_factory=dict)

    def __post_init__(self) -> None:
        records = dict(self.records)
        for key, record in records.items():
            if key != record.artifact:
                raise ValueError(f"record keyed {key!r} describes {record.artifact!r}")
        object.__setattr__(self, "records", records)

    @classmethod
    def from_records(cls, records: Iterable[ArtifactRecord]) -> ArtifactRegistry:
        index: dict[str, ArtifactRecord] = {}
        for record in records:
            if record.artifact in index:
                raise ValueError(f"duplicate artifact {record.artifact!r}")
            index[record.artifact] = record
        return cls(index)

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.records)))

    def __contains__(self, artifact: str) -> bool:
        return artifact in self.records

    def __len__(self) -> int:
        return len(self.records)

    def current(self, artifact: str) -> Version | None:
        record = self.records.get(artifact)
        return None if record is None else record.current_version

    def inputs_of(self, artifact: str) -> InputManifest:
        record = self.records.get(artifact)
        return InputManifest() if record is None else record.produced_from


@dataclass(frozen=True)
class ChangeScenario:
    changes: tuple[ArtifactRef, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "changes", tuple(self.changes))
        seen: set[str] = set()
        for change in self.changes:
            if change.artifact in seen:
                raise ValueError(f"artifact {change.artifact!r} changed twice")
            seen.add(change.artifact)

    @property
    def artifacts(self) -> frozenset[str]:
        return frozenset(c.artifact for c in self.changes)

    def __len__(self) -> int:
        return len(self.changes)


def validate_registry(reg: ArtifactRegistry) -> list[StructuralViolation]:
    """Report provenance cycles. Unregistered inputs are warnings, see `registry_warnings`."""
    edges = []
    for record in reg.records.values():
        for ref in record.produced_from:
            if ref.artifact in reg:
                edges.append((record.artifact, ref.artifact))
    return [
        StructuralViolation(RULE_PROVENANCE_CYCLE, members[0], members,
                            "provenance cycle among " + ", ".join(members))
        for members in support_cycles(edges)
    ]


def registry_warnings(reg: ArtifactRegistry) -> list[StructuralViolation]:
    """Manifest entries naming artifacts the registry does not know."""
    found = []
    for name in sorted(reg.records):
        for ref in reg.records[name].produced_from:
            if ref.artifact not in reg:
                found.append(StructuralViolation(
                    RULE_UNREGISTERED_INPUT, name, (name, ref.artifact),
                    f"{name} is produced from unregistered artifact {ref.artifact}"))
    return sorted(found, key=StructuralViolation.sort_key)


def apply_scenario(reg: ArtifactRegistry, scenario: ChangeScenario) -> ArtifactRegistry:
    records = dict(reg.records)
    for change in scenario.changes:
        old = records.get(change.artifact)
        if old is None:
            records[change.artifact] = ArtifactRecord(change.artifact, change.version)
        else:
            records[change.artifact] = ArtifactRecord(
                change.artifact, change.version, old.produced_from)
    return ArtifactRegistry(records)


@dataclass(frozen=True)
class VersionAmbiguity:
    """One artifact reached at several versions through different provenance paths."""

    artifact: str
    versions: tuple[Version, ...]


@dataclass(frozen=True)
class ClosureEntry:
    """An (artifact, version) pair of a closed manifest.

    ``via`` is the chain of registered artifacts the entry was reached
    through; empty for entries of the original manifest.
    """

    artifact: str
    version: Version
    via: tuple[str, ...] = ()

    @property
    def ref(self) -> ArtifactRef:
        return ArtifactRef(self.artifact, self.version)


@dataclass(frozen=True)
class ManifestClosure:
    entries: tuple[ClosureEntry, ...]
    ambiguities: tuple[VersionAmbiguity, ...] = ()

    def pairs(self) -> set[tuple[str, Version]]:
        return {(e.artifact, e.version) for e in self.entries}

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def _better(path: tuple[str, ...], incumbent: tuple[str, ...] | None) -> bool:
    return incumbent is None or (len(path), path) < (len(incumbent), incumbent)


def manifest_closure(reg: ArtifactRegistry, manifest: Iterable[ArtifactRef]) -> ManifestClosure:
    """Extend ``manifest`` through registry provenance to every indirect input.

    Indirect entries carry the version written in the producing record's
    manifest. When an artifact is reached at more than one version both
    entries are kept and a VersionAmbiguity is attached. Entries that are
    reachable along several paths keep the shortest (then lexicographically
    smallest) ``via`` chain.
    """
    # indirect[a] maps (artifact, version) -> shortest path below a, excluding a
    indirect: dict[str, dict[tuple[str, Version], tuple[str, ...]]] = {}
    active: list[str] = []

    def below(artifact: str) -> dict[tuple[str, Version], tuple[str, ...]]:
        if artifact in indirect:
            return indirect[artifact]
        if artifact in active:
            start = active.index(artifact)
            raise ProvenanceCycle(tuple(active[start:]) + (artifact,))
        active.append(artifact)
        found: dict[tuple[str, Version], tuple[str, ...]] = {}
        for ref in reg.inputs_of(artifact):
            key = (ref.artifact, ref.version)
            if _better((), found.get(key)):
                found[key] = ()
            if ref.artifact in reg:
                for sub_key, sub_path in below(ref.artifact).items():
                    path = (ref.artifact,) + sub_path
                    if _better(path, found.get(sub_key)):
                        found[sub_key] = path
        active.pop()
        indirect[artifact] = found
        return found

    best: dict[tuple[str, Version], tuple[str, ...]] = {}
    for ref in manifest:
        best[(ref.artifact, ref.version)] = ()
    for ref in manifest:
        if ref.artifact not in reg:
            continue
        for key, path in below(ref.artifact).items():
            path = (ref.artifact,) + path
            if _better(path, best.get(key)):
                best[key] = path

    ordered = sorted(best.items(), key=lambda kv: (kv[0][0], kv[0][1]))
    entries = tuple(ClosureEntry(a, v, via) for (a, v), via in ordered)

    by_artifact: dict[str, list[Version]] = {}
    for entry in entries:
        by_artifact.setdefault(entry.artifact, []).append(entry.version)
    ambiguities = tuple(
        VersionAmbiguity(a, tuple(vs)) for a, vs in sorted(by_artifact.items()) if len(vs) > 1
    )
    return ManifestClosure(entries, ambiguities)
