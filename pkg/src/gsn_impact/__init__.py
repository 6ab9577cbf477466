"""Change impact analysis for annotated GSN safety arguments.

Parse an argument, an artifact registry and optionally a change scenario,
then find out-of-date or conflicting evidence and the argument elements
that become suspect as a result.
"""

from .errors import (
    DuplicateId,
    GsnImpactError,
    MalformedVersion,
    MissingSolutionAnnotation,
    ParseError,
    ProvenanceCycle,
    SourceLocation,
    UnexpectedSolutionAnnotation,
    UnknownElement,
    UnknownKind,
)
from .formats import (
    parse_argument,
    parse_registry,
    parse_report_json,
    parse_scenario,
    render_argument,
    render_dot,
    render_registry,
    render_report_json,
    render_report_text,
    render_scenario,
)
from .impact import (
    Direction,
    Finding,
    FindingKind,
    ImpactReport,
    InputSummary,
    PropagatedSuspect,
    SuspectSet,
    check_artifact_refs,
    check_changed_artifacts,
    check_duplicate_evidence,
    check_stale_manifests,
    propagate_suspicion,
    run_all,
)
from .model import (
    ArgumentGraph,
    ArtifactRef,
    Element,
    ElementKind,
    InputManifest,
    SolutionAnnotation,
    StructuralViolation,
    ancestors_of,
    descendants_of,
    solutions_of,
    validate_graph,
)
from .registry import (
    ArtifactRecord,
    ArtifactRegistry,
    ChangeScenario,
    ManifestClosure,
    apply_scenario,
    manifest_closure,
    registry_warnings,
    validate_registry,
)
from .version import Ordering, Version, compare, parse_version

__version__ = "0.1.0"
