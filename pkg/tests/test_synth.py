import hashlib
import json
from pathlib import Path

import pytest

from codecarta.errors import ParameterError
from codecarta.miner import MinerConfig, mine
from codecarta.model import RelationId, Severity
from codecarta.serialize import serialize
from codecarta.synth import SynthConfig, synthesize


def tree_digest(root: Path) -> str:
    h = hashlib.sha256()
    for path in sorted(root.rglob("*")):
        if path.is_file():
            h.update(path.relative_to(root).as_posix().encode())
            h.update(path.read_bytes())
    return h.hexdigest()


def ledger_agrees(root: Path, result) -> list[str]:
    g = mine(MinerConfig(root_path=root, diagnostics_file=result.diagnostics_path))
    ledger = result.ledger
    problems = []
    if len(g.entities) != ledger["totalNodes"]:
        problems.append("total")
    counts: dict[str, int] = {}
    for entity in g.entities.values():
        counts[entity.kind.value] = counts.get(entity.kind.value, 0) + 1
    for kind, expected in ledger["entityCounts"].items():
        if counts.get(kind, 0) != expected:
            problems.append(f"kind:{kind}")
    for relation, expected in ledger["relationCounts"].items():
        if len(g.edges(RelationId(relation))) != expected:
            problems.append(f"relation:{relation}")
    severities = {"error": 0, "warning": 0, "hint": 0}
    for entity in g.entities.values():
        for diag in entity.diagnostics:
            severities[diag.severity.value] += 1
    for severity, expected in ledger["diagnosticCounts"].items():
        if severities[severity] != expected:
            problems.append(f"severity:{severity}")
    return problems


def test_same_seed_produces_identical_trees(tmp_path):
    cfg = SynthConfig(projects=3, target_nodes=180, seed=11, error_rate=0.05, warning_rate=0.1)
    synthesize(cfg, tmp_path / "a")
    synthesize(cfg, tmp_path / "b")
    assert tree_digest(tmp_path / "a") == tree_digest(tmp_path / "b")


def test_graphs_identical_across_directories(tmp_path):
    cfg = SynthConfig(projects=2, target_nodes=120, seed=3)
    synthesize(cfg, tmp_path / "left")
    synthesize(cfg, tmp_path / "right")
    left = serialize(mine(MinerConfig(root_path=tmp_path / "left")))
    right = serialize(mine(MinerConfig(root_path=tmp_path / "right")))
    assert left == right


def test_target_node_count_is_exact(tmp_path):
    for target in (4, 25, 333):
        cfg = SynthConfig(projects=3, target_nodes=target, seed=2)
        result = synthesize(cfg, tmp_path / f"t{target}")
        assert result.ledger["totalNodes"] == target
        g = mine(MinerConfig(root_path=tmp_path / f"t{target}"))
        assert len(g.entities) == target


def test_zero_error_rate_means_zero_errors(tmp_path):
    cfg = SynthConfig(projects=2, target_nodes=150, seed=9, error_rate=0.0, warning_rate=0.2)
    result = synthesize(cfg, tmp_path)
    g = mine(MinerConfig(root_path=tmp_path, diagnostics_file=result.diagnostics_path))
    errors = [
        d
        for e in g.entities.values()
        for d in e.diagnostics
        if d.severity == Severity.ERROR
    ]
    assert errors == []
    assert result.ledger["diagnosticCounts"]["error"] == 0


def test_ledger_agreement_for_several_seeds(tmp_path):
    for seed in range(3):
        cfg = SynthConfig(
            projects=3, target_nodes=140, seed=seed, error_rate=0.04, warning_rate=0.08
        )
        result = synthesize(cfg, tmp_path / str(seed))
        assert ledger_agrees(tmp_path / str(seed), result) == []


def test_infeasible_config_rejected():
    with pytest.raises(ParameterError):
        SynthConfig(projects=5, target_nodes=5, seed=0)
    with pytest.raises(ParameterError):
        SynthConfig(projects=0, target_nodes=10, seed=0)
    with pytest.raises(ParameterError):
        SynthConfig(projects=1, target_nodes=10, seed=0, error_rate=1.5)


def test_ledger_file_round_trips(tmp_path):
    cfg = SynthConfig(projects=2, target_nodes=60, seed=4)
    result = synthesize(cfg, tmp_path)
    on_disk = json.loads(result.ledger_path.read_text())
    assert on_disk == result.ledger
