import json
import random
import textwrap

import pytest

from codecarta.errors import DiagnosticsFormatError, EmptyWorkspaceError, WorkspaceError
from codecarta.miner import (
    MinerConfig,
    attach_diagnostic,
    clean_doc_text,
    discover_workspace,
    ingest_diagnostics,
    map_construct,
    mine,
    parse_module,
)
from codecarta.model import (
    Accessibility,
    EntityKind,
    MethodKind,
    RelationId,
    Severity,
    TypeKind,
    member_counts,
    validate_graph,
)
from codecarta.serialize import serialize


def write(root, rel, content):
    path = root / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(textwrap.dedent(content), encoding="utf-8")
    return path


def project_manifest(name, deps=()):
    dep_list = ", ".join(f'"{d}"' for d in deps)
    return f'[project]\nname = "{name}"\nversion = "0.1.0"\ndependencies = [{dep_list}]\n'


def entity_by_name(g, name, kind=None):
    for entity in g.entities.values():
        if entity.name == name and (kind is None or entity.kind == kind):
            return entity
    raise AssertionError(f"no entity named {name!r}")


# ---------------------------------------------------------------------------
# workspace discovery


def test_bare_workspace_manifest_yields_solution_only(tmp_path):
    write(tmp_path, "pyproject.toml", '[tool.codecarta.workspace]\nname = "empty"\n')
    g = mine(MinerConfig(root_path=tmp_path))
    assert len(g.entities) == 1
    only = next(iter(g.entities.values()))
    assert only.kind == EntityKind.SOLUTION
    assert only.name == "empty"
    assert all(not edges for edges in g.relations.values())


def test_two_projects_one_depends_on_the_other(tmp_path):
    write(tmp_path, "alpha/pyproject.toml", project_manifest("alpha"))
    write(tmp_path, "beta/pyproject.toml", project_manifest("beta", deps=["alpha>=0.1"]))
    g = mine(MinerConfig(root_path=tmp_path))
    kinds = [e.kind for e in g.entities.values()]
    assert kinds.count(EntityKind.SOLUTION) == 1
    assert kinds.count(EntityKind.PROJECT) == 2
    depends = g.edges(RelationId.DEPENDS_ON)
    assert len(depends) == 1
    (src, dst) = next(iter(depends))
    assert g.entities[src].name == "beta"
    assert g.entities[dst].name == "alpha"


def test_workspace_members_globs(tmp_path):
    write(tmp_path, "pyproject.toml",
          '[tool.codecarta.workspace]\nname = "ws"\nmembers = ["packages/*"]\n')
    write(tmp_path, "packages/one/pyproject.toml", project_manifest("one"))
    write(tmp_path, "packages/two/pyproject.toml", project_manifest("two"))
    info = discover_workspace(tmp_path)
    assert info.solution_name == "ws"
    assert [p.name for p in info.projects] == ["one", "two"]


def test_directory_without_manifest_but_sources_is_implicit_project(tmp_path):
    write(tmp_path, "tool.py", "def main():\n    pass\n")
    g = mine(MinerConfig(root_path=tmp_path))
    assert [e.kind for e in g.entities.values()].count(EntityKind.PROJECT) == 1
    assert entity_by_name(g, "tool", EntityKind.NAMESPACE)


def test_empty_directory_is_an_error(tmp_path):
    with pytest.raises(EmptyWorkspaceError):
        mine(MinerConfig(root_path=tmp_path))


def test_unreadable_root_is_an_error(tmp_path):
    with pytest.raises(WorkspaceError):
        MinerConfig(root_path=tmp_path / "missing")


# ---------------------------------------------------------------------------
# construct mapping

FIXTURE_MODULE = '''
"""Module documentation."""
from __future__ import annotations

import enum
from abc import ABC
from dataclasses import dataclass
from enum import Enum
from typing import Callable, ClassVar, NamedTuple, Protocol, TypeAlias

MODULE_CONSTANT = 3

Handler: TypeAlias = Callable[[int], str]


def free_function(x: int) -> int:
    return x


class Plain:
    """A plain class."""

    class_setting: ClassVar[int] = 1
    instance_field: int = 0

    def __init__(self, value: int):
        self.value = value

    def method(self) -> int:
        return self.value

    @staticmethod
    def helper() -> None:
        return None

    @property
    def size(self) -> int:
        return 1

    @size.setter
    def size(self, value: int) -> None:
        pass

    def __eq__(self, other) -> bool:
        return False


@dataclass(frozen=True)
class Frozen:
    a: int = 0


class Point(NamedTuple):
    x: int
    y: int


class Color(Enum):
    RED = 1


class Readable(Protocol):
    def read(self) -> str: ...


class Base(ABC):
    pass
'''


def mapped_rows(source):
    parsed = parse_module(textwrap.dedent(source), "fixture", "fixture.py")
    rows = []

    def walk(declarations):
        for d in declarations:
            rows.append((d.construct, d.name, d.kind, d.type_kind, d.method_kind, d.is_static))
            walk(d.members)

    walk(parsed.declarations)
    return rows


def test_construct_mapping_table_row_for_row():
    rows = mapped_rows(FIXTURE_MODULE)
    expected = [
        ("module-level binding", "MODULE_CONSTANT", EntityKind.FIELD, None, None, True),
        ("Callable type alias", "Handler", EntityKind.TYPE, TypeKind.DELEGATE, None, False),
        ("module-level function", "free_function", EntityKind.METHOD, None, MethodKind.ORDINARY, True),
        ("class definition", "Plain", EntityKind.TYPE, TypeKind.CLASS, None, False),
        ("class-body field", "class_setting", EntityKind.FIELD, None, None, True),
        ("class-body field", "instance_field", EntityKind.FIELD, None, None, False),
        ("__init__ / __new__", "__init__", EntityKind.METHOD, None, MethodKind.CONSTRUCTOR, False),
        ("instance method", "method", EntityKind.METHOD, None, MethodKind.ORDINARY, False),
        ("staticmethod/classmethod", "helper", EntityKind.METHOD, None, MethodKind.ORDINARY, True),
        ("property accessor pair", "size", EntityKind.PROPERTY, None, None, False),
        ("operator dunder", "__eq__", EntityKind.METHOD, None, MethodKind.OPERATOR, False),
        ("frozen dataclass or NamedTuple", "Frozen", EntityKind.TYPE, TypeKind.STRUCT, None, False),
        ("class-body field", "a", EntityKind.FIELD, None, None, False),
        ("frozen dataclass or NamedTuple", "Point", EntityKind.TYPE, TypeKind.STRUCT, None, False),
        ("class-body field", "x", EntityKind.FIELD, None, None, False),
        ("class-body field", "y", EntityKind.FIELD, None, None, False),
        ("Enum subclass", "Color", EntityKind.TYPE, TypeKind.ENUM, None, False),
        ("class-body field", "RED", EntityKind.FIELD, None, None, False),
        ("Protocol or ABC subclass", "Readable", EntityKind.TYPE, TypeKind.INTERFACE, None, False),
        ("instance method", "read", EntityKind.METHOD, None, MethodKind.ORDINARY, False),
        ("Protocol or ABC subclass", "Base", EntityKind.TYPE, TypeKind.INTERFACE, None, False),
    ]
    assert rows == expected


def test_free_function_is_static_method():
    import ast

    decls = map_construct(ast.parse("def f(): pass").body[0], module_level=True)
    assert decls[0].kind == EntityKind.METHOD
    assert decls[0].is_static is True


def test_enum_maps_to_enum_type_kind():
    import ast

    decls = map_construct(ast.parse("class C(Enum): pass").body[0])
    assert decls[0].type_kind == TypeKind.ENUM


def test_accessibility_from_naming_convention():
    rows = mapped_rows(
        """
        class T:
            public_field: int = 0
            _internal_field: int = 0
            __private_field: int = 0
        """
    )
    access = {name: None for _, name, *_ in rows}
    parsed = parse_module(
        textwrap.dedent(
            """
            class T:
                public_field: int = 0
                _internal_field: int = 0
                __private_field: int = 0
            """
        ),
        "m",
        "m.py",
    )
    fields = parsed.declarations[0].members
    assert [f.accessibility for f in fields] == [
        Accessibility.PUBLIC,
        Accessibility.INTERNAL,
        Accessibility.PRIVATE,
    ]


def test_generic_class_sort_name_carries_arity():
    parsed = parse_module(
        "from typing import Generic, TypeVar\nT = TypeVar('T')\nU = TypeVar('U')\n"
        "class Registry(Generic[T, U]):\n    pass\n",
        "m",
        "m.py",
    )
    registry = [d for d in parsed.declarations if d.name == "Registry"][0]
    assert registry.type_params == 2
    assert registry.sort_name == "Registry`2"


def test_method_overloads_disambiguated_by_signature():
    parsed = parse_module(
        textwrap.dedent(
            """
            from typing import overload

            class T:
                @overload
                def get(self, key: int) -> str: ...
                @overload
                def get(self, key: str) -> str: ...
                def get(self, key):
                    return ""
            """
        ),
        "m",
        "m.py",
    )
    methods = parsed.declarations[0].members
    keys = {(m.sort_name, m.disambiguator) for m in methods}
    assert len(keys) == len(methods) == 3


def test_redefinition_last_wins():
    parsed = parse_module("def f():\n    pass\n\ndef f():\n    return 1\n", "m", "m.py")
    functions = [d for d in parsed.declarations if d.name == "f"]
    assert len(functions) == 1
    assert functions[0].line_start > 1


# ---------------------------------------------------------------------------
# doc comments


def test_doc_comment_absent():
    parsed = parse_module("def f():\n    pass\n", "m", "m.py")
    assert parsed.declarations[0].doc is None


def test_doc_comment_single_line():
    parsed = parse_module('def f():\n    "Adds two numbers."\n', "m", "m.py")
    assert parsed.declarations[0].doc == ("Adds two numbers.",)


def test_doc_comment_multi_paragraph_with_code_span():
    text = (
        "First paragraph\nspanning two lines.\n\n"
        "Second paragraph with ``code span`` inside.\n\n"
        "    indented code block\n    second line\n"
    )
    paragraphs = clean_doc_text(text)
    assert paragraphs == (
        "First paragraph spanning two lines.",
        "Second paragraph with `code span` inside.",
        "indented code block\nsecond line",
    )


# ---------------------------------------------------------------------------
# full mining


def small_workspace(tmp_path):
    write(tmp_path, "pyproject.toml",
          '[tool.codecarta.workspace]\nname = "demo"\nmembers = ["pkgs/*"]\n')
    write(tmp_path, "pkgs/core/pyproject.toml", project_manifest("core", deps=["requests"]))
    write(
        tmp_path,
        "pkgs/core/src/core/shapes.py",
        '''
        """Shapes live here."""


        class Shape:
            """Base shape."""

            sides: int = 0

            def area(self) -> float:
                return 0.0


        class Square(Shape):
            side: float = 1.0

            def area(self) -> float:
                return self.side * self.side
        ''',
    )
    write(
        tmp_path,
        "pkgs/app/pyproject.toml",
        project_manifest("app", deps=["core", "numpy>=1.0"]),
    )
    write(
        tmp_path,
        "pkgs/app/src/app/main.py",
        '''
        from core.shapes import Square


        def build() -> Square:
            return Square()


        def describe(shape: Square) -> str:
            return str(shape)
        ''',
    )
    return tmp_path


def test_small_workspace_structure(tmp_path):
    g = mine(MinerConfig(root_path=small_workspace(tmp_path)))
    assert validate_graph(g).ok
    solution = entity_by_name(g, "demo", EntityKind.SOLUTION)
    assert solution.token.path == (0,)
    for name in ("core", "app"):
        entity_by_name(g, name, EntityKind.PROJECT)
    entity_by_name(g, "core.shapes", EntityKind.NAMESPACE)
    square = entity_by_name(g, "Square", EntityKind.TYPE)
    assert square.instance_member_count == 2  # field + method
    assert square.accessibility == Accessibility.PUBLIC

    inherits = g.edges(RelationId.INHERITS_FROM)
    assert len(inherits) == 1
    src, dst = next(iter(inherits))
    assert g.entities[src].name == "Square"
    assert g.entities[dst].name == "Shape"

    returns = {
        (g.entities[s].name, g.entities[d].name) for s, d in g.edges(RelationId.RETURNS)
    }
    assert ("build", "Square") in returns
    type_of = {
        (g.entities[s].name, g.entities[d].name) for s, d in g.edges(RelationId.TYPE_OF)
    }
    assert ("describe", "Square") in type_of

    packages = [e for e in g.entities.values() if e.kind == EntityKind.PACKAGE]
    assert {p.name for p in packages} == {"requests", "numpy"}
    depends = {
        (g.entities[s].name, g.entities[d].name) for s, d in g.edges(RelationId.DEPENDS_ON)
    }
    assert ("app", "core") in depends
    assert ("app", "numpy") in depends
    assert ("core", "requests") in depends


def test_packages_are_detached_roots(tmp_path):
    g = mine(MinerConfig(root_path=small_workspace(tmp_path)))
    declares_targets = {dst for _, dst in g.edges(RelationId.DECLARES)}
    for entity in g.entities.values():
        if entity.kind == EntityKind.PACKAGE:
            assert entity.token not in declares_targets
            assert len(entity.token.path) == 1


def test_member_counts_match_recomputation(tmp_path):
    g = mine(MinerConfig(root_path=small_workspace(tmp_path)))
    for token, entity in g.entities.items():
        if entity.kind == EntityKind.TYPE:
            assert member_counts(g, token) == (
                entity.instance_member_count,
                entity.static_member_count,
            )


def test_mining_is_deterministic_across_thread_counts(tmp_path):
    root = small_workspace(tmp_path)
    first = serialize(mine(MinerConfig(root_path=root, thread_count=1)))
    second = serialize(mine(MinerConfig(root_path=root, thread_count=8)))
    assert first == second


def test_parse_failure_becomes_placeholder_with_error(tmp_path):
    write(tmp_path, "pyproject.toml", project_manifest("broken"))
    write(tmp_path, "src/broken/bad.py", "def broken(:\n    pass\n")
    write(tmp_path, "src/broken/good.py", "def fine():\n    pass\n")
    g = mine(MinerConfig(root_path=tmp_path))
    bad = entity_by_name(g, "broken.bad", EntityKind.NAMESPACE)
    assert any(
        d.severity == Severity.ERROR and d.code == "parse-error" for d in bad.diagnostics
    )
    assert entity_by_name(g, "fine", EntityKind.METHOD)


def test_unresolved_externals_dropped_by_default_stubbed_on_request(tmp_path):
    write(tmp_path, "pyproject.toml", project_manifest("p"))
    write(
        tmp_path,
        "src/p/mod.py",
        "import numpy\n\n\ndef f(a: numpy.ndarray) -> numpy.ndarray:\n    return a\n",
    )
    lean = mine(MinerConfig(root_path=tmp_path))
    assert not any(e.kind == EntityKind.PACKAGE for e in lean.entities.values())
    assert not lean.edges(RelationId.TYPE_OF)

    full = mine(MinerConfig(root_path=tmp_path, follow_external_packages=True))
    stub = entity_by_name(full, "numpy", EntityKind.PACKAGE)
    assert stub.extra.get("stub") is True
    assert any(dst == stub.token for _, dst in full.edges(RelationId.TYPE_OF))
    assert validate_graph(full).ok


def test_exclude_glob_only_removes_entities(tmp_path):
    write(tmp_path, "pyproject.toml", project_manifest("p"))
    write(tmp_path, "src/p/keep.py", "def kept():\n    pass\n")
    write(tmp_path, "src/p/tests/test_stuff.py", "def test_x():\n    pass\n")
    full = mine(MinerConfig(root_path=tmp_path))
    trimmed = mine(MinerConfig(root_path=tmp_path, exclude_globs=("src/p/tests",)))
    full_names = {(e.kind, e.name) for e in full.entities.values()}
    trimmed_names = {(e.kind, e.name) for e in trimmed.entities.values()}
    assert trimmed_names < full_names
    # keep.py is the only module left; its namespace token must be unchanged
    # because removing a later sibling does not shift earlier ordinals.
    kept_before = entity_by_name(full, "p.keep", EntityKind.NAMESPACE).token
    kept_after = entity_by_name(trimmed, "p.keep", EntityKind.NAMESPACE).token
    assert kept_before == kept_after


def test_dependency_cycle_broken_with_warning(tmp_path):
    write(tmp_path, "a/pyproject.toml", project_manifest("a", deps=["b"]))
    write(tmp_path, "b/pyproject.toml", project_manifest("b", deps=["a"]))
    g = mine(MinerConfig(root_path=tmp_path))
    assert validate_graph(g).ok
    assert len(g.edges(RelationId.DEPENDS_ON)) == 1
    warned = [
        e
        for e in g.entities.values()
        if any(d.code == "circular-dependency" for d in e.diagnostics)
    ]
    assert len(warned) == 1


def test_nested_classes_flattened_with_qualified_names(tmp_path):
    write(tmp_path, "pyproject.toml", project_manifest("p"))
    write(
        tmp_path,
        "src/p/mod.py",
        "class Outer:\n    class Inner:\n        def m(self):\n            pass\n",
    )
    g = mine(MinerConfig(root_path=tmp_path))
    outer = entity_by_name(g, "Outer", EntityKind.TYPE)
    inner = entity_by_name(g, "Outer.Inner", EntityKind.TYPE)
    assert inner.token.parent == outer.token.parent  # siblings under the namespace
    assert outer.instance_member_count == 0  # nested type is not a member


# ---------------------------------------------------------------------------
# diagnostics ingestion


def test_empty_report_leaves_graph_unchanged(tmp_path):
    g = mine(MinerConfig(root_path=small_workspace(tmp_path)))
    report = tmp_path / "diags.ndjson"
    report.write_text("", encoding="utf-8")
    assert ingest_diagnostics(g, report) == g


def test_error_inside_method_attaches_to_method(tmp_path):
    root = small_workspace(tmp_path)
    g = mine(MinerConfig(root_path=root))
    area = entity_by_name(g, "area", EntityKind.METHOD)
    line = area.extra["lineStart"]
    report = tmp_path / "diags.ndjson"
    report.write_text(
        json.dumps(
            {
                "severity": "error",
                "code": "E100",
                "message": "broken",
                "file": area.extra["file"],
                "line": line,
            }
        )
        + "\n",
        encoding="utf-8",
    )
    out = ingest_diagnostics(g, report)
    updated = out.entities[area.token]
    assert any(d.code == "E100" and d.severity == Severity.ERROR for d in updated.diagnostics)


def test_unmatched_location_attaches_to_containing_project(tmp_path):
    root = small_workspace(tmp_path)
    g = mine(MinerConfig(root_path=root))
    report = tmp_path / "diags.ndjson"
    report.write_text(
        json.dumps(
            {
                "severity": "warning",
                "code": "W1",
                "message": "meta",
                "file": "pkgs/core/pyproject.toml",
                "line": 1,
            }
        )
        + "\n",
        encoding="utf-8",
    )
    out = ingest_diagnostics(g, report)
    core = entity_by_name(out, "core", EntityKind.PROJECT)
    assert any(d.code == "W1" for d in core.diagnostics)


def test_locationless_diagnostic_attaches_to_solution(tmp_path):
    root = small_workspace(tmp_path)
    g = mine(MinerConfig(root_path=root))
    report = tmp_path / "diags.ndjson"
    report.write_text(
        json.dumps({"severity": "hint", "code": "H1", "message": "fyi"}) + "\n",
        encoding="utf-8",
    )
    out = ingest_diagnostics(g, report)
    solution = entity_by_name(out, "demo", EntityKind.SOLUTION)
    assert any(d.code == "H1" for d in solution.diagnostics)


def test_malformed_report_names_line(tmp_path):
    g = mine(MinerConfig(root_path=small_workspace(tmp_path)))
    report = tmp_path / "diags.ndjson"
    report.write_text('{"severity": "error", "code": "E", "message": "m"}\nnot json\n')
    with pytest.raises(DiagnosticsFormatError) as exc:
        ingest_diagnostics(g, report)
    assert exc.value.line_number == 2


def test_no_diagnostic_dropped_and_attachment_matches_brute_force(tmp_path):
    root = small_workspace(tmp_path)
    g = mine(MinerConfig(root_path=root))
    files = sorted(
        {e.extra["file"] for e in g.entities.values() if "file" in e.extra}
    )
    rng = random.Random(5)
    records = []
    for _ in range(100):
        records.append(
            {
                "severity": rng.choice(["error", "warning", "hint"]),
                "code": f"X{rng.randrange(10)}",
                "message": "probe",
                "file": rng.choice(files),
                "line": rng.randint(1, 40),
            }
        )
    report = tmp_path / "diags.ndjson"
    report.write_text("\n".join(json.dumps(r) for r in records) + "\n", encoding="utf-8")
    out = ingest_diagnostics(g, report)

    total_before = sum(len(e.diagnostics) for e in g.entities.values())
    total_after = sum(len(e.diagnostics) for e in out.entities.values())
    assert total_after - total_before == len(records)

    # O(n*m) containment oracle.
    for record in records:
        expected = None
        for token in sorted(g.entities):
            e = g.entities[token]
            if e.extra.get("file") != record["file"]:
                continue
            start, end = e.extra.get("lineStart"), e.extra.get("lineEnd")
            if isinstance(start, int) and isinstance(end, int) and start <= record["line"] <= end:
                if expected is None:
                    expected = token
                else:
                    prev = g.entities[expected]
                    key_new = (len(token.path), start, token)
                    key_old = (len(prev.token.path), prev.extra["lineStart"], expected)
                    if key_new > key_old:
                        expected = token
        got = attach_diagnostic(g, _as_diagnostic(record))
        if expected is not None:
            assert got == expected


def _as_diagnostic(record):
    from codecarta.model import Diagnostic

    return Diagnostic(
        Severity(record["severity"]),
        record["code"],
        record["message"],
        record.get("file"),
        record.get("line"),
        record.get("column"),
    )
