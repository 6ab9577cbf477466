import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsn_impact import (
    ArtifactRecord,
    ArtifactRef,
    ArtifactRegistry,
    ChangeScenario,
    InputManifest,
    ProvenanceCycle,
    apply_scenario,
    manifest_closure,
    parse_version,
    registry_warnings,
    validate_registry,
)

from helpers import closure_pairs, oracle_closure, random_registry

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def ref(a, v):
    return ArtifactRef(a, parse_version(v))


def record(name, version, *inputs):
    return ArtifactRecord(name, parse_version(version), InputManifest(tuple(inputs)))


@pytest.fixture
def fmea_registry():
    return ArtifactRegistry.from_records([
        record("FMEA", "1.0", ref("LifeTest", "1.0"), ref("CompSpec", "1.0")),
        record("LifeTest", "1.0"),
        record("CompSpec", "1.0"),
    ])


def test_validate_registry_examples(fmea_registry):
    reg = ArtifactRegistry.from_records([record("FMEA", "1.0", ref("LifeTest", "1.0")),
                                         record("LifeTest", "1.0")])
    assert validate_registry(reg) == []
    assert validate_registry(ArtifactRegistry()) == []
    cyclic = ArtifactRegistry.from_records([record("A", "1", ref("B", "1")),
                                            record("B", "1", ref("A", "1"))])
    (violation,) = validate_registry(cyclic)
    assert violation.members == ("A", "B")


def test_self_input_is_rejected():
    with pytest.raises(ValueError):
        record("A", "1", ref("A", "1"))


def test_unregistered_inputs_are_warnings_only():
    reg = ArtifactRegistry.from_records([record("FMEA", "1.0", ref("Vendor", "3"))])
    assert validate_registry(reg) == []
    (warning,) = registry_warnings(reg)
    assert warning.members == ("FMEA", "Vendor")


def test_apply_scenario_examples():
    reg = ArtifactRegistry.from_records([record("AADL_Arch", "1.0")])
    updated = apply_scenario(reg, ChangeScenario((ref("AADL_Arch", "1.1"),)))
    assert updated.current("AADL_Arch") == parse_version("1.1")
    assert str(updated.current("AADL_Arch")) == "1.1"
    assert reg.current("AADL_Arch") == parse_version("1.0")

    assert apply_scenario(reg, ChangeScenario()) == reg

    added = apply_scenario(ArtifactRegistry(), ChangeScenario((ref("X", "2.0"),)))
    assert added.records["X"] == record("X", "2.0")


def test_apply_scenario_keeps_provenance(fmea_registry):
    updated = apply_scenario(fmea_registry, ChangeScenario((ref("FMEA", "2.0"),)))
    assert updated.inputs_of("FMEA") == fmea_registry.inputs_of("FMEA")


def test_scenario_ids_distinct():
    with pytest.raises(ValueError):
        ChangeScenario((ref("A", "1"), ref("A", "2")))


def test_closure_of_fmea(fmea_registry):
    closure = manifest_closure(fmea_registry, [ref("FMEA", "1.0")])
    assert [(e.artifact, str(e.version), e.via) for e in closure] == [
        ("CompSpec", "1.0", ("FMEA",)),
        ("FMEA", "1.0", ()),
        ("LifeTest", "1.0", ("FMEA",)),
    ]
    assert closure.ambiguities == ()


def test_closure_of_empty_manifest(fmea_registry):
    assert len(manifest_closure(fmea_registry, [])) == 0


def test_closure_keeps_conflicting_versions():
    reg = ArtifactRegistry.from_records([
        record("FTA", "1", ref("FMEA", "1"), ref("LifeTest", "2")),
        record("FMEA", "1", ref("LifeTest", "1")),
        record("LifeTest", "2"),
    ])
    closure = manifest_closure(reg, [ref("FTA", "1")])
    assert closure_pairs(closure) == {("FTA", "1"), ("FMEA", "1"), ("LifeTest", "1"),
                                      ("LifeTest", "2")}
    (amb,) = closure.ambiguities
    assert amb.artifact == "LifeTest"
    assert [str(v) for v in amb.versions] == ["1", "2"]


def test_closure_prefers_shortest_path():
    reg = ArtifactRegistry.from_records([
        record("Top", "1", ref("Mid", "1"), ref("Leaf", "1")),
        record("Mid", "1", ref("Leaf", "1")),
        record("Leaf", "1"),
    ])
    closure = manifest_closure(reg, [ref("Top", "1")])
    via = {e.artifact: e.via for e in closure}
    assert via == {"Top": (), "Mid": ("Top",), "Leaf": ("Top",)}


def test_closure_detects_cycles():
    reg = ArtifactRegistry.from_records([record("A", "1", ref("B", "1")),
                                         record("B", "1", ref("A", "1"))])
    with pytest.raises(ProvenanceCycle) as info:
        manifest_closure(reg, [ref("A", "1")])
    assert info.value.members == ("A", "B", "A")


def test_unregistered_artifacts_are_opaque():
    closure = manifest_closure(ArtifactRegistry(), [ref("Ghost", "1")])
    assert closure_pairs(closure) == {("Ghost", "1")}


def _random_manifest(rng, reg):
    names = sorted(reg.records) + ["X0", "X1"]
    chosen = rng.sample(names, rng.randint(0, min(4, len(names))))
    return [ref(a, rng.choice(["0.9", "1.0", "1.1", "2.0"])) for a in chosen]


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_closure_matches_fixpoint_oracle(seed):
    rng = random.Random(seed)
    reg = random_registry(rng)
    assert validate_registry(reg) == []
    m = _random_manifest(rng, reg)
    closure = manifest_closure(reg, m)
    assert closure_pairs(closure) == oracle_closure(reg, m)
    # entries sorted by artifact then version
    keys = [(e.artifact, e.version) for e in closure]
    assert keys == sorted(keys)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_closure_laws(seed):
    rng = random.Random(seed)
    reg = random_registry(rng)
    small = _random_manifest(rng, reg)
    extra = [r for r in _random_manifest(rng, reg) if r.artifact not in {s.artifact for s in small}]
    big = small + extra
    c_small = closure_pairs(manifest_closure(reg, small))
    c_big = closure_pairs(manifest_closure(reg, big))
    assert {(r.artifact, str(r.version)) for r in small} <= c_small
    assert c_small <= c_big
    # closing the closed set adds nothing (entries may repeat an artifact, so close each one)
    again = set()
    for artifact, version in c_small:
        again |= closure_pairs(manifest_closure(reg, [ref(artifact, version)]))
    assert again == c_small


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_apply_scenario_never_mutates(seed):
    rng = random.Random(seed)
    reg = random_registry(rng)
    snapshot = dict(reg.records)
    names = sorted(reg.records) + ["NEW"]
    scenario = ChangeScenario(tuple(ref(a, "9.9") for a in rng.sample(names, min(2, len(names)))))
    updated = apply_scenario(reg, scenario)
    assert reg.records == snapshot
    for change in scenario.changes:
        assert updated.current(change.artifact) == change.version
    assert apply_scenario(reg, ChangeScenario()) == reg
