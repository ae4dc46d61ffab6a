import json
import random

import pytest

from codecarta.errors import (
    DocumentFormatError,
    GraphValidationError,
    SchemaVersionError,
)
from codecarta.model import EntityKind, GraphBuilder
from codecarta.serialize import deserialize, serialize

from conftest import make_random_graph


def minimal_graph():
    b = GraphBuilder()
    b.add(None, EntityKind.SOLUTION, "only")
    return b.build()


def test_minimal_document_shape():
    doc = json.loads(serialize(minimal_graph()))
    assert doc["schemaVersion"] == "codecarta-graph/1"
    assert list(doc["entities"]) == ["0"]
    assert doc["entities"]["0"]["kind"] == "solution"
    assert set(doc["relations"]) == {
        "declares",
        "inheritsFrom",
        "typeOf",
        "returns",
        "dependsOn",
    }


def test_serialize_is_byte_stable():
    g = make_random_graph(random.Random(3), size=60, with_diagnostics=True)
    assert serialize(g) == serialize(g)


def test_round_trip_minimal():
    g = minimal_graph()
    assert deserialize(serialize(g)) == g


def test_round_trip_random_graphs():
    for seed in range(60):
        g = make_random_graph(random.Random(seed), size=45, with_diagnostics=True)
        assert deserialize(serialize(g)) == g


def test_canonical_reserialization_is_stable():
    for seed in range(20):
        g = make_random_graph(random.Random(100 + seed), size=45)
        first = serialize(g)
        assert serialize(deserialize(first)) == first


def test_unknown_schema_version_rejected():
    doc = json.loads(serialize(minimal_graph()))
    doc["schemaVersion"] = "codecarta-graph/99"
    with pytest.raises(SchemaVersionError):
        deserialize(json.dumps(doc))


def test_edge_with_missing_token_rejected():
    doc = json.loads(serialize(minimal_graph()))
    doc["relations"]["typeOf"] = [["0", "4.2"]]
    with pytest.raises(GraphValidationError) as exc:
        deserialize(json.dumps(doc))
    assert "missing-endpoint" in str(exc.value)


def test_malformed_text_reports_offset():
    with pytest.raises(DocumentFormatError) as exc:
        deserialize(b'{"schemaVersion": ')
    assert "offset" in str(exc.value)


def test_structural_violation_names_path():
    doc = json.loads(serialize(minimal_graph()))
    doc["entities"]["0"]["kind"] = "galaxy"
    with pytest.raises(DocumentFormatError) as exc:
        deserialize(json.dumps(doc))
    assert "kind" in str(exc.value)


def test_serialize_refuses_invalid_graph():
    from codecarta.model import Entity, EntityGraph, RelationId
    from codecarta.tokens import Token

    token = Token((0,))
    g = EntityGraph(
        "codecarta-graph/1",
        {token: Entity(token=token, name="s", kind=EntityKind.SOLUTION)},
        {RelationId.TYPE_OF: frozenset({(token, Token((9,)))})},
    )
    with pytest.raises(GraphValidationError):
        serialize(g)


def test_relations_sorted_by_token_order_not_text():
    b = GraphBuilder()
    s = b.add(None, EntityKind.SOLUTION, "s")
    handles = [b.add(s, EntityKind.PROJECT, f"p{i:02d}") for i in range(12)]
    from codecarta.model import RelationId

    for i in range(11, 0, -1):
        b.relate(RelationId.DEPENDS_ON, handles[i], handles[0])
    doc = json.loads(serialize(b.build()))
    sources = [src for src, _ in doc["relations"]["dependsOn"]]
    # "0.10" must come after "0.9" (numeric path order, not string order).
    assert sources == [f"0.{i}" for i in range(1, 12)]
