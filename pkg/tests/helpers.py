"""Random instance generators and independent oracles for the test suite.

The oracles deliberately share no code with the package beyond the value
types: they work on plain tuples and re-implement version comparison.
"""

from __future__ import annotations

import random
from pathlib import Path

from gsn_impact import (
    ArgumentGraph,
    ArtifactRecord,
    ArtifactRef,
    ArtifactRegistry,
    ChangeScenario,
    Element,
    ElementKind,
    InputManifest,
    SolutionAnnotation,
    parse_version,
)

FIXTURES = Path(__file__).parent / "fixtures"
VERSION_POOL = ("0.9", "1.0", "1.1", "2.0")


# --- oracles -------------------------------------------------------------

def oracle_greater(a: str, b: str) -> bool:
    """Strict numeric greater-than on dotted version text, zero padded."""
    xs = [int(p) for p in a.split(".")]
    ys = [int(p) for p in b.split(".")]
    n = max(len(xs), len(ys))
    xs += [0] * (n - len(xs))
    ys += [0] * (n - len(ys))
    return xs > ys


def oracle_stale_solutions(graph: ArgumentGraph, reg: ArtifactRegistry) -> set[str]:
    """Solutions s with some manifest entry (a_i, v_i) such that the registry holds (a, v), a = a_i, v > v_i."""
    registered = [(name, str(rec.current_version)) for name, rec in reg.records.items()]
    flagged = set()
    for element in graph.elements.values():
        if element.solution is None:
            continue
        manifest = [(r.artifact, str(r.version)) for r in element.solution.input_manifest]
        if any(a == ai and oracle_greater(v, vi)
               for (ai, vi) in manifest for (a, v) in registered):
            flagged.add(element.id)
    return flagged


def oracle_closure(reg: ArtifactRegistry, manifest) -> set[tuple[str, str]]:
    """Iterate ``S := S ∪ produced_from(a) for (a, _) in S`` until nothing changes."""
    produced = {
        name: {(r.artifact, str(r.version)) for r in rec.produced_from}
        for name, rec in reg.records.items()
    }
    current = {(r.artifact, str(r.version)) for r in manifest}
    while True:
        grown = set(current)
        for artifact, _ in current:
            grown |= produced.get(artifact, set())
        if grown == current:
            return current
        current = grown


def oracle_reachable(edges, start: str) -> set[str]:
    """Depth-first reachability over an explicit edge list, excluding ``start``."""
    out: dict[str, list[str]] = {}
    for a, b in edges:
        out.setdefault(a, []).append(b)
    seen: set[str] = set()
    stack = list(out.get(start, []))
    while stack:
        node = stack.pop()
        if node not in seen:
            seen.add(node)
            stack.extend(out.get(node, []))
    seen.discard(start)
    return seen


def closure_pairs(closure) -> set[tuple[str, str]]:
    return {(e.artifact, str(e.version)) for e in closure.entries}


# --- generators ----------------------------------------------------------

def _v(rng: random.Random) -> str:
    return rng.choice(VERSION_POOL)


def random_registry(rng: random.Random, n_artifacts: int | None = None,
                    unregistered: int = 2) -> ArtifactRegistry:
    """An acyclic registry: artifacts only list earlier artifacts (or unregistered names) as inputs."""
    n = rng.randint(0, 20) if n_artifacts is None else n_artifacts
    names = [f"A{i:02d}" for i in range(n)]
    extra = [f"X{i}" for i in range(unregistered)]
    records = []
    for i, name in enumerate(names):
        pool = names[:i] + extra
        k = rng.randint(0, min(4, len(pool)))
        inputs = rng.sample(pool, k)
        manifest = InputManifest(tuple(ArtifactRef(a, parse_version(_v(rng))) for a in inputs))
        records.append(ArtifactRecord(name, parse_version(_v(rng)), manifest))
    return ArtifactRegistry.from_records(records)


def random_manifest(rng: random.Random, artifacts: list[str], max_len: int = 4) -> InputManifest:
    k = rng.randint(0, min(max_len, len(artifacts)))
    return InputManifest(tuple(
        ArtifactRef(a, parse_version(_v(rng))) for a in rng.sample(artifacts, k)))


def random_graph(rng: random.Random, artifacts: list[str], max_solutions: int = 30,
                 max_goals: int = 15, evidence_pool: int = 6) -> ArgumentGraph:
    """A structurally valid argument graph with random annotations.

    Support edges only point from earlier to later nodes, so the result is a DAG.
    """
    n_goals = rng.randint(1, max_goals)
    n_strats = rng.randint(0, 4)
    n_sols = rng.randint(0, max_solutions)
    n_ctx = rng.randint(0, 5)
    elements = []
    branch = []
    for i in range(n_goals):
        refs = ()
        if artifacts and rng.random() < 0.3:
            refs = tuple(random_manifest(rng, artifacts, 2))
        kind = ElementKind.GOAL
        elements.append(Element(f"G{i:02d}", kind, f"goal {i}", None, refs))
        branch.append(f"G{i:02d}")
    for i in range(n_strats):
        elements.append(Element(f"St{i}", ElementKind.STRATEGY, f"strategy {i}"))
        branch.append(f"St{i}")
    rng.shuffle(branch)
    supported_by = []
    for i, node in enumerate(branch[1:], start=1):
        for parent in rng.sample(branch[:i], rng.randint(1, min(2, i))):
            supported_by.append((parent, node))
    for i in range(n_sols):
        sid = f"S{i:02d}"
        ann = SolutionAnnotation(
            evidence_id=f"E{rng.randrange(evidence_pool)}",
            evidence_version=parse_version(_v(rng)),
            input_manifest=random_manifest(rng, artifacts),
            lifecycle_phase=rng.choice(["Software Architecture Design", "Testing"]),
            standard_ref=rng.choice([None, "ISO 26262-6 7.4"]),
        )
        elements.append(Element(sid, ElementKind.SOLUTION, f"solution {i}", "M", (), ann))
        for parent in rng.sample(branch, rng.randint(1, min(2, len(branch)))):
            supported_by.append((parent, sid))
    in_context_of = []
    kinds = [ElementKind.CONTEXT, ElementKind.ASSUMPTION, ElementKind.JUSTIFICATION]
    for i in range(n_ctx):
        cid = f"C{i}"
        refs = tuple(random_manifest(rng, artifacts, 1)) if artifacts and rng.random() < 0.3 else ()
        elements.append(Element(cid, rng.choice(kinds), f"context {i}", None, refs))
        for subject in rng.sample(branch, rng.randint(1, min(2, len(branch)))):
            in_context_of.append((subject, cid))
    return ArgumentGraph.from_elements(elements, supported_by, in_context_of)


def random_instance(rng: random.Random):
    reg = random_registry(rng)
    artifacts = sorted(reg.records) + ["X0", "X1"]
    graph = random_graph(rng, artifacts)
    return graph, reg


def random_scenario(rng: random.Random, reg: ArtifactRegistry) -> ChangeScenario:
    names = sorted(reg.records) + ["NEW"]
    k = rng.randint(0, min(3, len(names)))
    return ChangeScenario(tuple(
        ArtifactRef(a, parse_version(_v(rng))) for a in rng.sample(names, k)))


def random_dag_edges(rng: random.Random, n: int, p: float = 0.15) -> list[tuple[str, str]]:
    nodes = [f"N{i:02d}" for i in range(n)]
    order = nodes[:]
    rng.shuffle(order)
    return [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
