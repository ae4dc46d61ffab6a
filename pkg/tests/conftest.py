"""Shared randomized generators for property tests; everything is seed-driven."""

from __future__ import annotations

import random
import re

from codecarta.model import (
    Accessibility,
    Diagnostic,
    EntityGraph,
    EntityKind,
    GraphBuilder,
    MethodKind,
    RelationId,
    Severity,
    TypeKind,
)
from codecarta.tokens import ForestNode

_NAMES = [
    "Api",
    "Core",
    "Data",
    "Engine",
    "Hub",
    "Io",
    "Jobs",
    "Kit",
    "Lib",
    "Model",
    "Net",
    "Oak",
    "Parse",
    "Query",
    "Run",
    "Svc",
    "Tool",
    "Util",
    "View",
    "Zip",
]


def make_random_forest(rng: random.Random, max_nodes: int = 14) -> list[ForestNode]:
    """A small forest with unique sibling keys and varied ranks/names."""
    total = rng.randint(1, max_nodes)
    counter = [0]

    def fresh(rank_floor: int) -> ForestNode:
        counter[0] += 1
        rank = rng.randint(rank_floor, 4)
        name = rng.choice(_NAMES)
        disambiguator = str(counter[0]) if rng.random() < 0.3 else ""
        return ForestNode(
            key=counter[0], kind_rank=rank, name=name, disambiguator=disambiguator
        )

    roots = [fresh(0)]
    nodes = [roots[0]]
    while counter[0] < total:
        if rng.random() < 0.15:
            node = fresh(0)
            roots.append(node)
        else:
            parent = rng.choice(nodes)
            node = fresh(parent.kind_rank)
            parent.children.append(node)
        nodes.append(node)

    # Deduplicate colliding sibling keys by forcing distinct disambiguators.
    def dedupe(siblings: list[ForestNode]) -> None:
        seen: dict[tuple, int] = {}
        for child in siblings:
            key = child.sort_key
            if key in seen:
                seen[key] += 1
                child.disambiguator = f"{child.disambiguator}~{seen[key]}"
            else:
                seen[key] = 0
        for child in siblings:
            dedupe(child.children)

    dedupe(roots)
    return roots


def shuffled_copy(roots: list[ForestNode], rng: random.Random) -> list[ForestNode]:
    """Same forest, freshly built with every sibling list permuted."""

    def clone(node: ForestNode) -> ForestNode:
        copied = ForestNode(
            key=node.key,
            kind_rank=node.kind_rank,
            name=node.name,
            disambiguator=node.disambiguator,
        )
        kids = [clone(child) for child in node.children]
        rng.shuffle(kids)
        copied.children = kids
        return copied

    out = [clone(root) for root in roots]
    rng.shuffle(out)
    return out


def make_random_graph(
    rng: random.Random,
    size: int = 40,
    *,
    with_diagnostics: bool = False,
    packages: bool = True,
) -> EntityGraph:
    """A valid EntityGraph of roughly `size` entities with all five relations."""
    b = GraphBuilder()
    solution = b.add(None, EntityKind.SOLUTION, "sol")
    project_handles = [
        b.add(solution, EntityKind.PROJECT, f"proj{i}")
        for i in range(rng.randint(1, min(4, max(1, size // 8))))
    ]
    package_handles = (
        [b.add(None, EntityKind.PACKAGE, f"pkg{i}") for i in range(rng.randint(0, 3))]
        if packages
        else []
    )

    namespace_handles: list[int] = []
    type_handles: list[int] = []
    member_handles: list[int] = []
    counters = {"ns": 0, "ty": 0, "m": 0}
    budget = max(0, size - 1 - len(project_handles) - len(package_handles))

    def random_accessibility() -> Accessibility:
        return rng.choice(list(Accessibility))

    def maybe_diags() -> tuple[Diagnostic, ...]:
        if not with_diagnostics or rng.random() > 0.2:
            return ()
        severity = rng.choice(list(Severity))
        return (Diagnostic(severity, "X001", "synthetic finding"),)

    for _ in range(budget):
        roll = rng.random()
        if not namespace_handles or roll < 0.12:
            counters["ns"] += 1
            namespace_handles.append(
                b.add(
                    rng.choice(project_handles),
                    EntityKind.NAMESPACE,
                    f"ns{counters['ns']}",
                    diagnostics=maybe_diags(),
                )
            )
        elif not type_handles or roll < 0.45:
            counters["ty"] += 1
            type_kind = rng.choice(list(TypeKind))
            type_handles.append(
                b.add(
                    rng.choice(namespace_handles),
                    EntityKind.TYPE,
                    f"Type{counters['ty']}",
                    type_kind=type_kind,
                    accessibility=random_accessibility(),
                    is_static=False,
                    doc_comment="A synthetic type." if rng.random() < 0.3 else None,
                    diagnostics=maybe_diags(),
                )
            )
        else:
            counters["m"] += 1
            kind = rng.choice(
                [EntityKind.FIELD, EntityKind.METHOD, EntityKind.PROPERTY, EntityKind.EVENT]
            )
            member_handles.append(
                b.add(
                    rng.choice(type_handles),
                    EntityKind.METHOD if kind == EntityKind.METHOD else kind,
                    f"member{counters['m']}",
                    method_kind=(
                        rng.choice(list(MethodKind)) if kind == EntityKind.METHOD else None
                    ),
                    accessibility=random_accessibility(),
                    is_static=rng.random() < 0.4,
                    diagnostics=maybe_diags(),
                )
            )

    for _ in range(rng.randint(0, len(type_handles))):
        a, c = rng.choice(type_handles), rng.choice(type_handles)
        if a != c:
            b.relate(RelationId.INHERITS_FROM, a, c)
    for handle in member_handles:
        if type_handles and rng.random() < 0.4:
            b.relate(RelationId.TYPE_OF, handle, rng.choice(type_handles))
        if type_handles and rng.random() < 0.2:
            b.relate(RelationId.RETURNS, handle, rng.choice(type_handles))
    # dependsOn stays acyclic: edges only point from later to earlier projects.
    for i, src in enumerate(project_handles):
        for dst in project_handles[:i]:
            if rng.random() < 0.4:
                b.relate(RelationId.DEPENDS_ON, src, dst)
        for pkg in package_handles:
            if rng.random() < 0.4:
                b.relate(RelationId.DEPENDS_ON, src, pkg)

    return b.build()


# ---------------------------------------------------------------------------
# Random predicate expressions with independently constructed semantics.
# The generator builds the meaning of each subexpression directly as a Python
# closure while rendering the source text, so the compiled pipeline can be
# checked against it without sharing any parsing code.

_STR_FIELDS = {
    "name": lambda e: e.name,
    "kind": lambda e: e.kind.value,
    "typeKind": lambda e: e.type_kind.value if e.type_kind else "",
    "methodKind": lambda e: e.method_kind.value if e.method_kind else "",
    "accessibility": lambda e: e.accessibility.value if e.accessibility else "",
}

_NUM_FIELDS = {
    "memberCount": lambda e: e.instance_member_count + e.static_member_count,
    "instanceMemberCount": lambda e: e.instance_member_count,
    "staticMemberCount": lambda e: e.static_member_count,
}

_BOOL_FIELDS = {
    "isStatic": lambda e: e.is_static,
    "hasErrors": lambda e: any(d.severity == Severity.ERROR for d in e.diagnostics),
    "hasWarnings": lambda e: any(d.severity == Severity.WARNING for d in e.diagnostics),
    "hasDoc": lambda e: e.doc_comment is not None,
}

_STR_VALUES = ["type", "method", "Type", "member", "public", "private", "class", "e", "3"]
_SAFE_PATTERNS = ["^Type", "member[0-9]+$", "[0-9]", "^I[A-Z]", "e.*e", "proj|pkg"]

# Precedence levels: or=0, and=1, cmp=2, atom/not=3.


def random_expression(rng: random.Random, depth: int = 0):
    """Returns (source_text, independent_eval_fn, precedence_level)."""

    def wrap(text, level, minimum):
        if level < minimum or rng.random() < 0.15:
            return f"({text})", 3
        return text, level

    roll = rng.random()
    if depth >= 3 or roll < 0.30:
        # Boolean atom or literal.
        pick = rng.random()
        if pick < 0.55:
            field_name = rng.choice(sorted(_BOOL_FIELDS))
            return field_name, _BOOL_FIELDS[field_name], 3
        if pick < 0.75:
            value = rng.random() < 0.5
            return ("true" if value else "false"), (lambda e, v=value: v), 3
        fn_pick = rng.random()
        if fn_pick < 0.4:
            needle = rng.choice(_STR_VALUES)
            return (
                f'docContains("{needle}")',
                lambda e, n=needle: n.lower() in (e.doc_comment or "").lower(),
                3,
            )
        if fn_pick < 0.7:
            needle = rng.choice(_STR_VALUES)
            field_name = rng.choice(sorted(_STR_FIELDS))
            getter = _STR_FIELDS[field_name]
            return (
                f'contains({field_name}, "{needle}")',
                lambda e, g=getter, n=needle: n.lower() in g(e).lower(),
                3,
            )
        pattern = rng.choice(_SAFE_PATTERNS)
        return (
            f'matches(name, "{pattern}")',
            lambda e, p=pattern: re.search(p, e.name) is not None,
            3,
        )
    if roll < 0.55:
        # Comparison.
        kind = rng.random()
        if kind < 0.5:
            field_name = rng.choice(sorted(_NUM_FIELDS))
            getter = _NUM_FIELDS[field_name]
            op = rng.choice(["==", "!=", "<", "<=", ">", ">="])
            value = rng.choice([0, 1, 2, 3, 5, 10, 10.5])
            ops = {
                "==": lambda a, b: a == b,
                "!=": lambda a, b: a != b,
                "<": lambda a, b: a < b,
                "<=": lambda a, b: a <= b,
                ">": lambda a, b: a > b,
                ">=": lambda a, b: a >= b,
            }
            impl = ops[op]
            if rng.random() < 0.5:
                text = f"{field_name} {op} {value}"
                return text, lambda e, g=getter, f=impl, v=value: f(g(e), v), 2
            text = f"{value} {op} {field_name}"
            return text, lambda e, g=getter, f=impl, v=value: f(v, g(e)), 2
        if kind < 0.85:
            field_name = rng.choice(sorted(_STR_FIELDS))
            getter = _STR_FIELDS[field_name]
            op = rng.choice(["==", "!="])
            value = rng.choice(_STR_VALUES)
            if op == "==":
                return (
                    f'{field_name} == "{value}"',
                    lambda e, g=getter, v=value: g(e) == v,
                    2,
                )
            return (
                f'{field_name} != "{value}"',
                lambda e, g=getter, v=value: g(e) != v,
                2,
            )
        field_name = rng.choice(sorted(_BOOL_FIELDS))
        getter = _BOOL_FIELDS[field_name]
        value = rng.random() < 0.5
        op = rng.choice(["==", "!="])
        if op == "==":
            return (
                f"{field_name} == {'true' if value else 'false'}",
                lambda e, g=getter, v=value: g(e) == v,
                2,
            )
        return (
            f"{field_name} != {'true' if value else 'false'}",
            lambda e, g=getter, v=value: g(e) != v,
            2,
        )
    if roll < 0.65:
        inner_text, inner_fn, inner_level = random_expression(rng, depth + 1)
        if inner_level < 3:
            inner_text = f"({inner_text})"
        return f"!{inner_text}", lambda e, f=inner_fn: not f(e), 3
    # Chain of && or ||.
    op = rng.choice(["&&", "||"])
    minimum = 2 if op == "&&" else 1
    count = rng.randint(2, 3)
    parts, fns = [], []
    for _ in range(count):
        text, fn, level = random_expression(rng, depth + 1)
        text, _level = wrap(text, level, minimum)
        parts.append(text)
        fns.append(fn)
    text = f" {op} ".join(parts)
    if op == "&&":
        return text, lambda e, fs=tuple(fns): all(f(e) for f in fs), 1
    return text, lambda e, fs=tuple(fns): any(f(e) for f in fs), 0
