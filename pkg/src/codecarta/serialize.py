"""Versioned, lossless interchange between EntityGraph and a JSON document.

The canonical form is byte-stable: entities are keyed by dotted token text in
token order, per-entity keys follow a fixed order, optional fields are omitted
when absent, and every relation appears with its edges sorted by
(source, target) token order.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import DocumentFormatError, GraphValidationError, SchemaVersionError
from .model import (
    SCHEMA_VERSION,
    Accessibility,
    Diagnostic,
    Entity,
    EntityGraph,
    EntityKind,
    MethodKind,
    RelationId,
    Severity,
    TypeKind,
    validate_graph,
)
from .tokens import Token, parse_token, render_token
from .errors import TokenParseError


def serialize(g: EntityGraph) -> bytes:
    """Canonical UTF-8 document for a valid graph; refuses invalid graphs."""
    report = validate_graph(g)
    if not report.ok:
        raise GraphValidationError(report)

    entities: dict[str, Any] = {}
    for token in sorted(g.entities):
        entities[render_token(token)] = _entity_to_json(g.entities[token])

    relations: dict[str, Any] = {}
    for relation in RelationId:
        pairs = sorted(g.edges(relation))
        relations[relation.value] = [
            [render_token(src), render_token(dst)] for src, dst in pairs
        ]

    document = {
        "schemaVersion": g.schema_version,
        "entities": entities,
        "relations": relations,
    }
    return (json.dumps(document, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def deserialize(data: bytes | str) -> EntityGraph:
    """Parse a graph document; the result always passes validate_graph."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentFormatError(f"not valid JSON at offset {exc.pos}: {exc.msg}") from exc

    if not isinstance(document, dict):
        raise DocumentFormatError("top level must be an object")
    version = document.get("schemaVersion")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"unsupported schema version {version!r}; this build accepts {SCHEMA_VERSION!r}"
        )

    raw_entities = _expect(document, "entities", dict, "$")
    raw_relations = _expect(document, "relations", dict, "$")

    entities: dict[Token, Entity] = {}
    for key in raw_entities:
        path = f"entities[{key!r}]"
        token = _parse_token_at(key, path)
        entities[token] = _entity_from_json(token, raw_entities[key], path)

    relations: dict[RelationId, frozenset] = {}
    for name, raw_pairs in raw_relations.items():
        try:
            relation = RelationId(name)
        except ValueError:
            raise DocumentFormatError(f"relations[{name!r}]: unknown relation id") from None
        if not isinstance(raw_pairs, list):
            raise DocumentFormatError(f"relations[{name!r}]: expected an array of pairs")
        pairs = set()
        for i, pair in enumerate(raw_pairs):
            path = f"relations[{name!r}][{i}]"
            if not (isinstance(pair, list) and len(pair) == 2):
                raise DocumentFormatError(f"{path}: expected [source, target]")
            src = _parse_token_at(pair[0], path)
            dst = _parse_token_at(pair[1], path)
            pairs.add((src, dst))
        relations[relation] = frozenset(pairs)
    for relation in RelationId:
        relations.setdefault(relation, frozenset())

    graph = EntityGraph(
        schema_version=version,
        entities=dict(sorted(entities.items())),
        relations=relations,
    )
    report = validate_graph(graph)
    if not report.ok:
        raise GraphValidationError(report)
    return graph


def _entity_to_json(e: Entity) -> dict[str, Any]:
    out: dict[str, Any] = {"name": e.name, "kind": e.kind.value}
    if e.type_kind is not None:
        out["typeKind"] = e.type_kind.value
    if e.method_kind is not None:
        out["methodKind"] = e.method_kind.value
    if e.accessibility is not None:
        out["accessibility"] = e.accessibility.value
    out["isStatic"] = e.is_static
    out["instanceMemberCount"] = e.instance_member_count
    out["staticMemberCount"] = e.static_member_count
    if e.doc_comment is not None:
        out["docComment"] = e.doc_comment
    if e.diagnostics:
        out["diagnostics"] = [_diagnostic_to_json(d) for d in e.diagnostics]
    if e.extra:
        out["extra"] = {k: e.extra[k] for k in sorted(e.extra)}
    return out


def _diagnostic_to_json(d: Diagnostic) -> dict[str, Any]:
    out: dict[str, Any] = {
        "severity": d.severity.value,
        "code": d.code,
        "message": d.message,
    }
    if d.file is not None:
        out["file"] = d.file
    if d.line is not None:
        out["line"] = d.line
    if d.column is not None:
        out["column"] = d.column
    return out


def _entity_from_json(token: Token, raw: Any, path: str) -> Entity:
    if not isinstance(raw, dict):
        raise DocumentFormatError(f"{path}: expected an object")
    name = _expect(raw, "name", str, path)
    kind = _enum_field(raw, "kind", EntityKind, path, required=True)
    type_kind = _enum_field(raw, "typeKind", TypeKind, path)
    method_kind = _enum_field(raw, "methodKind", MethodKind, path)
    accessibility = _enum_field(raw, "accessibility", Accessibility, path)
    is_static = _expect(raw, "isStatic", bool, path, default=False)
    instance_count = _expect(raw, "instanceMemberCount", int, path, default=0)
    static_count = _expect(raw, "staticMemberCount", int, path, default=0)
    doc = raw.get("docComment")
    if doc is not None and not isinstance(doc, str):
        raise DocumentFormatError(f"{path}.docComment: expected a string")

    diagnostics = []
    raw_diags = raw.get("diagnostics", [])
    if not isinstance(raw_diags, list):
        raise DocumentFormatError(f"{path}.diagnostics: expected an array")
    for i, raw_diag in enumerate(raw_diags):
        diagnostics.append(_diagnostic_from_json(raw_diag, f"{path}.diagnostics[{i}]"))

    extra = raw.get("extra", {})
    if not isinstance(extra, dict):
        raise DocumentFormatError(f"{path}.extra: expected an object")
    for key, value in extra.items():
        if not isinstance(value, (str, int, float, bool)):
            raise DocumentFormatError(f"{path}.extra[{key!r}]: values must be scalars")

    return Entity(
        token=token,
        name=name,
        kind=kind,
        type_kind=type_kind,
        method_kind=method_kind,
        accessibility=accessibility,
        is_static=is_static,
        doc_comment=doc,
        diagnostics=tuple(diagnostics),
        instance_member_count=instance_count,
        static_member_count=static_count,
        extra=dict(extra),
    )


def _diagnostic_from_json(raw: Any, path: str) -> Diagnostic:
    if not isinstance(raw, dict):
        raise DocumentFormatError(f"{path}: expected an object")
    severity = _enum_field(raw, "severity", Severity, path, required=True)
    code = _expect(raw, "code", str, path)
    message = _expect(raw, "message", str, path)
    file = raw.get("file")
    line = raw.get("line")
    column = raw.get("column")
    if file is not None and not isinstance(file, str):
        raise DocumentFormatError(f"{path}.file: expected a string")
    for label, value in (("line", line), ("column", column)):
        if value is not None and not isinstance(value, int):
            raise DocumentFormatError(f"{path}.{label}: expected an integer")
    return Diagnostic(severity, code, message, file, line, column)


def _parse_token_at(value: Any, path: str) -> Token:
    if not isinstance(value, str):
        raise DocumentFormatError(f"{path}: token must be a string")
    try:
        return parse_token(value)
    except TokenParseError as exc:
        raise DocumentFormatError(f"{path}: bad token {value!r}: {exc}") from exc


def _expect(raw: dict, key: str, expected: type, path: str, default: Any = ...) -> Any:
    if key not in raw:
        if default is not ...:
            return default
        raise DocumentFormatError(f"{path}.{key}: missing required field")
    value = raw[key]
    if expected is int and isinstance(value, bool):
        raise DocumentFormatError(f"{path}.{key}: expected an integer")
    if not isinstance(value, expected):
        raise DocumentFormatError(f"{path}.{key}: expected {expected.__name__}")
    return value


def _enum_field(raw: dict, key: str, enum_type, path: str, *, required: bool = False):
    value = raw.get(key)
    if value is None:
        if required:
            raise DocumentFormatError(f"{path}.{key}: missing required field")
        return None
    try:
        return enum_type(value)
    except ValueError:
        raise DocumentFormatError(f"{path}.{key}: unknown value {value!r}") from None
