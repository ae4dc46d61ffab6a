"""The language-neutral entity graph: kinds, relations, diagnostics, validation.

Entities form a containment hierarchy under the `declares` relation
(solution -> project -> namespace -> type -> member); four further relations
(inheritsFrom, typeOf, returns, dependsOn) carry cross-cutting structure.
An EntityGraph is an immutable value after construction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping, Union

from .errors import KindError, NotFoundError
from .tokens import ForestNode, Token, assign_tokens

Scalar = Union[str, int, float, bool]

SCHEMA_VERSION = "codecarta-graph/1"


class EntityKind(str, enum.Enum):
    SOLUTION = "solution"
    PROJECT = "project"
    PACKAGE = "package"
    NAMESPACE = "namespace"
    TYPE = "type"
    FIELD = "field"
    METHOD = "method"
    PROPERTY = "property"
    EVENT = "event"

    @property
    def rank(self) -> int:
        return _KIND_RANK[self]


# Containment ranks: Solution < Project < Package/Namespace < Type < members.
_KIND_RANK = {
    EntityKind.SOLUTION: 0,
    EntityKind.PROJECT: 1,
    EntityKind.PACKAGE: 2,
    EntityKind.NAMESPACE: 2,
    EntityKind.TYPE: 3,
    EntityKind.FIELD: 4,
    EntityKind.METHOD: 4,
    EntityKind.PROPERTY: 4,
    EntityKind.EVENT: 4,
}

MEMBER_KINDS = frozenset(
    {EntityKind.FIELD, EntityKind.METHOD, EntityKind.PROPERTY, EntityKind.EVENT}
)


class TypeKind(str, enum.Enum):
    CLASS = "class"
    STRUCT = "struct"
    ENUM = "enum"
    INTERFACE = "interface"
    DELEGATE = "delegate"


class MethodKind(str, enum.Enum):
    ORDINARY = "ordinary"
    CONSTRUCTOR = "constructor"
    GETTER = "getter"
    SETTER = "setter"
    OPERATOR = "operator"
    # Host-specific kinds; the label goes into extra["methodKindLabel"].
    OTHER = "other"


class Accessibility(str, enum.Enum):
    PUBLIC = "public"
    INTERNAL = "internal"
    PROTECTED = "protected"
    PROTECTED_INTERNAL = "protectedInternal"
    PRIVATE_PROTECTED = "privateProtected"
    PRIVATE = "private"


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"
    HINT = "hint"


class RelationId(str, enum.Enum):
    DECLARES = "declares"
    INHERITS_FROM = "inheritsFrom"
    TYPE_OF = "typeOf"
    RETURNS = "returns"
    DEPENDS_ON = "dependsOn"


@dataclass(frozen=True)
class Diagnostic:
    """A compiler-style finding attached to an entity.

    The source location may be absent for project-level findings.
    """

    severity: Severity
    code: str
    message: str
    file: str | None = None
    line: int | None = None
    column: int | None = None


@dataclass(frozen=True)
class Entity:
    """One code element: kind, name, modifiers, diagnostics, doc, metadata."""

    token: Token
    name: str
    kind: EntityKind
    type_kind: TypeKind | None = None
    method_kind: MethodKind | None = None
    accessibility: Accessibility | None = None
    is_static: bool = False
    doc_comment: str | None = None
    diagnostics: tuple[Diagnostic, ...] = ()
    instance_member_count: int = 0
    static_member_count: int = 0
    extra: Mapping[str, Scalar] = field(default_factory=dict)


Edge = tuple[Token, Token]


@dataclass(frozen=True)
class EntityGraph:
    """Entities keyed by token plus named relations (edge sets).

    Immutable after construction; safe to share across threads for reading.
    """

    schema_version: str
    entities: Mapping[Token, Entity]
    relations: Mapping[RelationId, frozenset[Edge]]

    def edges(self, relation: RelationId) -> frozenset[Edge]:
        return self.relations.get(relation, frozenset())

    @cached_property
    def declares_children(self) -> Mapping[Token, tuple[Token, ...]]:
        """Declares targets grouped by source, each group in token order."""
        grouped: dict[Token, list[Token]] = {}
        for src, dst in self.edges(RelationId.DECLARES):
            grouped.setdefault(src, []).append(dst)
        return {src: tuple(sorted(kids)) for src, kids in grouped.items()}

    @cached_property
    def declares_parent(self) -> Mapping[Token, Token]:
        return {dst: src for src, dst in self.edges(RelationId.DECLARES)}

    @cached_property
    def roots(self) -> tuple[Token, ...]:
        """Entities with no declares parent, in token order (includes detached nodes)."""
        return tuple(sorted(t for t in self.entities if t not in self.declares_parent))

    @cached_property
    def solution_roots(self) -> tuple[Token, ...]:
        return tuple(t for t in self.roots if self.entities[t].kind == EntityKind.SOLUTION)


def children(g: EntityGraph, t: Token) -> list[Entity]:
    """Declares children of t in token order (which realizes the sibling sort)."""
    if t not in g.entities:
        raise NotFoundError(f"no entity with token {t}")
    return [g.entities[c] for c in g.declares_children.get(t, ())]


def member_counts(g: EntityGraph, t: Token) -> tuple[int, int]:
    """(instance, static) counts of t's member-kind children; t must be a Type."""
    if t not in g.entities:
        raise NotFoundError(f"no entity with token {t}")
    entity = g.entities[t]
    if entity.kind != EntityKind.TYPE:
        raise KindError(f"member_counts requires a type entity, got {entity.kind.value}")
    instance = static = 0
    for child in g.declares_children.get(t, ()):
        child_entity = g.entities[child]
        if child_entity.kind in MEMBER_KINDS:
            if child_entity.is_static:
                static += 1
            else:
                instance += 1
    return instance, static


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    tokens: tuple[Token, ...] = ()

    def __str__(self) -> str:
        if self.tokens:
            return f"{self.code}: {self.message} [{', '.join(map(str, self.tokens))}]"
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __iter__(self):
        return iter(self.violations)


def validate_graph(g: EntityGraph) -> ValidationReport:
    """Check every graph invariant; returns a report, never raises.

    An empty report means the graph is valid. Edges with missing endpoints are
    reported once and excluded from the structural checks that follow.
    """
    violations: list[Violation] = []

    def bad(code: str, message: str, *tokens: Token) -> None:
        violations.append(Violation(code, message, tokens))

    sound_edges: dict[RelationId, list[Edge]] = {}
    for relation in RelationId:
        kept: list[Edge] = []
        for src, dst in sorted(g.edges(relation)):
            missing = [t for t in (src, dst) if t not in g.entities]
            if missing:
                bad(
                    "missing-endpoint",
                    f"{relation.value} edge {src} -> {dst} references unknown token(s) "
                    f"{', '.join(map(str, missing))}",
                )
            else:
                kept.append((src, dst))
        sound_edges[relation] = kept

    # declares: single parent, no cycles, Solution roots, strict rank growth,
    # and coherence between edge structure and token paths.
    parent: dict[Token, Token] = {}
    for src, dst in sound_edges[RelationId.DECLARES]:
        if dst in parent:
            bad("multiple-parents", f"{dst} has more than one declares parent", dst)
            continue
        parent[dst] = src
        src_rank = g.entities[src].kind.rank
        dst_rank = g.entities[dst].kind.rank
        if dst_rank <= src_rank:
            bad(
                "kind-rank",
                f"declares child {dst} ({g.entities[dst].kind.value}) does not rank "
                f"strictly below parent {src} ({g.entities[src].kind.value})",
                src,
                dst,
            )
        if dst.parent != src:
            bad(
                "token-mismatch",
                f"declares edge {src} -> {dst} disagrees with the child's token path",
                src,
                dst,
            )

    for component in _cycles(parent.items()):
        bad(
            "declares-cycle",
            f"declares contains a cycle through {', '.join(map(str, component))}",
            *component,
        )

    incident = set(parent)
    incident.update(src for src, _ in sound_edges[RelationId.DECLARES])
    for t in sorted(incident):
        if t not in parent and g.entities[t].kind != EntityKind.SOLUTION:
            bad(
                "root-not-solution",
                f"declares root {t} has kind {g.entities[t].kind.value}",
                t,
            )

    for t in sorted(g.entities):
        expected_parent = t.parent
        if expected_parent is None:
            continue
        if expected_parent not in g.entities:
            bad("orphan-token", f"{t} has no entity at its parent token", t)
        elif parent.get(t) != expected_parent:
            bad("orphan-token", f"{t} is not declared by its parent token", t)

    # dependsOn restricted to Project/Package nodes must be acyclic.
    dep_edges = [
        (src, dst)
        for src, dst in sound_edges[RelationId.DEPENDS_ON]
        if g.entities[src].kind in (EntityKind.PROJECT, EntityKind.PACKAGE)
        and g.entities[dst].kind in (EntityKind.PROJECT, EntityKind.PACKAGE)
    ]
    for component in _cycles(dep_edges):
        bad(
            "depends-on-cycle",
            f"circular dependency among {', '.join(map(str, component))}",
            *component,
        )

    # Per-entity field constraints and stored member counts.
    for t in sorted(g.entities):
        e = g.entities[t]
        if (e.type_kind is not None) != (e.kind == EntityKind.TYPE):
            bad("type-kind-presence", f"{t}: typeKind present iff kind is type", t)
        if (e.method_kind is not None) != (e.kind == EntityKind.METHOD):
            bad("method-kind-presence", f"{t}: methodKind present iff kind is method", t)
        if e.accessibility is not None and not (
            e.kind == EntityKind.TYPE or e.kind in MEMBER_KINDS
        ):
            bad(
                "accessibility-on-structural-kind",
                f"{t}: accessibility defined only for types and members",
                t,
            )
        if e.instance_member_count < 0 or e.static_member_count < 0:
            bad("negative-member-count", f"{t}: member counts must be non-negative", t)
        if e.kind == EntityKind.TYPE:
            instance = static = 0
            for c in g.declares_children.get(t, ()):
                child_entity = g.entities.get(c)
                if child_entity is not None and child_entity.kind in MEMBER_KINDS:
                    if child_entity.is_static:
                        static += 1
                    else:
                        instance += 1
            if (instance, static) != (e.instance_member_count, e.static_member_count):
                bad(
                    "member-count-mismatch",
                    f"{t}: stored counts ({e.instance_member_count}, "
                    f"{e.static_member_count}) != declared ({instance}, {static})",
                    t,
                )
            if (
                e.is_static
                and e.type_kind == TypeKind.CLASS
                and e.instance_member_count > 0
            ):
                bad(
                    "static-class-instance-members",
                    f"{t}: static class declares instance members",
                    t,
                )
        elif e.instance_member_count or e.static_member_count:
            bad(
                "member-counts-on-non-type",
                f"{t}: member counts are only defined for types",
                t,
            )

    return ValidationReport(tuple(violations))


def _cycles(edges: Iterable[Edge]) -> list[tuple[Token, ...]]:
    """Strongly connected components of size > 1 (or self-loops), sorted."""
    adjacency: dict[Token, list[Token]] = {}
    nodes: set[Token] = set()
    self_loops: set[Token] = set()
    for src, dst in edges:
        nodes.add(src)
        nodes.add(dst)
        if src == dst:
            self_loops.add(src)
        adjacency.setdefault(src, []).append(dst)

    index: dict[Token, int] = {}
    lowlink: dict[Token, int] = {}
    on_stack: set[Token] = set()
    stack: list[Token] = []
    counter = [0]
    found: list[tuple[Token, ...]] = []

    def strongconnect(start: Token) -> None:
        work = [(start, iter(adjacency.get(start, ())))]
        index[start] = lowlink[start] = counter[0]
        counter[0] += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, successors = work[-1]
            advanced = False
            for nxt in successors:
                if nxt not in index:
                    index[nxt] = lowlink[nxt] = counter[0]
                    counter[0] += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(adjacency.get(nxt, ()))))
                    advanced = True
                    break
                if nxt in on_stack:
                    lowlink[node] = min(lowlink[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent_node = work[-1][0]
                lowlink[parent_node] = min(lowlink[parent_node], lowlink[node])
            if lowlink[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                if len(component) > 1 or node in self_loops:
                    found.append(tuple(sorted(component)))

    for node in sorted(nodes):
        if node not in index:
            strongconnect(node)
    return sorted(found)


class GraphBuilder:
    """Assembles an EntityGraph: add nodes by parent handle, then build().

    Tokens are assigned by the forest's (kind rank, sort name, disambiguator)
    structure, declares edges follow automatically, and member counts for
    type entities are recomputed unless explicitly provided.
    """

    def __init__(self, schema_version: str = SCHEMA_VERSION):
        self.schema_version = schema_version
        self._nodes: list[dict] = []
        self._edges: list[tuple[RelationId, int, int]] = []

    def add(
        self,
        parent: int | None,
        kind: EntityKind,
        name: str,
        *,
        sort_name: str | None = None,
        disambiguator: str = "",
        **fields,
    ) -> int:
        handle = len(self._nodes)
        self._nodes.append(
            {
                "parent": parent,
                "kind": kind,
                "name": name,
                "sort_name": sort_name if sort_name is not None else name,
                "disambiguator": disambiguator,
                "fields": fields,
            }
        )
        return handle

    def relate(self, relation: RelationId, src: int, dst: int) -> None:
        self._edges.append((relation, src, dst))

    def build(self, *, fill_member_counts: bool = True) -> EntityGraph:
        forest_nodes = [
            ForestNode(
                key=handle,
                kind_rank=record["kind"].rank,
                name=record["sort_name"],
                disambiguator=record["disambiguator"],
            )
            for handle, record in enumerate(self._nodes)
        ]
        roots: list[ForestNode] = []
        for handle, record in enumerate(self._nodes):
            if record["parent"] is None:
                roots.append(forest_nodes[handle])
            else:
                forest_nodes[record["parent"]].children.append(forest_nodes[handle])
        token_of = assign_tokens(roots)

        entities: dict[Token, Entity] = {}
        for handle, record in enumerate(self._nodes):
            token = token_of[handle]
            entities[token] = Entity(
                token=token, name=record["name"], kind=record["kind"], **record["fields"]
            )
        entities = dict(sorted(entities.items()))

        relations: dict[RelationId, set[Edge]] = {rel: set() for rel in RelationId}
        for handle, record in enumerate(self._nodes):
            if record["parent"] is not None:
                relations[RelationId.DECLARES].add(
                    (token_of[record["parent"]], token_of[handle])
                )
        for relation, src, dst in self._edges:
            relations[relation].add((token_of[src], token_of[dst]))

        graph = EntityGraph(
            schema_version=self.schema_version,
            entities=entities,
            relations={rel: frozenset(pairs) for rel, pairs in relations.items()},
        )
        if fill_member_counts:
            graph = _with_recomputed_counts(graph)
        return graph


def _with_recomputed_counts(g: EntityGraph) -> EntityGraph:
    entities = dict(g.entities)
    for t, e in entities.items():
        if e.kind != EntityKind.TYPE:
            continue
        instance = static = 0
        for c in g.declares_children.get(t, ()):
            child_entity = entities[c]
            if child_entity.kind in MEMBER_KINDS:
                if child_entity.is_static:
                    static += 1
                else:
                    instance += 1
        if (instance, static) != (e.instance_member_count, e.static_member_count):
            entities[t] = replace(
                e, instance_member_count=instance, static_member_count=static
            )
    return EntityGraph(g.schema_version, entities, g.relations)
