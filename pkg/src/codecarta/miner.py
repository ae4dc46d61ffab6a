"""Static miner: parses a Python workspace into an EntityGraph.

The host-ecosystem mapping: a workspace (pyproject manifest or directory of
distribution packages) becomes the solution, each distribution package a
project, external requirements become packages, module files namespaces, and
class/function/assignment declarations map onto the type/member vocabulary.
Parsing uses the stdlib ast; name resolution for inheritsFrom/typeOf/returns
edges is best-effort syntactic over per-module import tables. Files that fail
to parse contribute a placeholder namespace with an error diagnostic instead
of aborting the run.
"""

from __future__ import annotations

import ast
import fnmatch
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import (
    DiagnosticsFormatError,
    EmptyWorkspaceError,
    GraphValidationError,
    WorkspaceError,
)
from .model import (
    Accessibility,
    Diagnostic,
    EntityGraph,
    EntityKind,
    GraphBuilder,
    MethodKind,
    RelationId,
    Severity,
    TypeKind,
    validate_graph,
)

# ---------------------------------------------------------------------------
# Configuration


@dataclass(frozen=True)
class MinerConfig:
    root_path: Path
    include_globs: tuple[str, ...] = ("*.py",)
    exclude_globs: tuple[str, ...] = ()
    diagnostics_file: Path | None = None
    thread_count: int = 1
    follow_external_packages: bool = False

    def __post_init__(self) -> None:
        if self.thread_count < 1:
            raise WorkspaceError("threadCount must be at least 1")
        root = Path(self.root_path)
        if not root.is_dir():
            raise WorkspaceError(f"root path is not a readable directory: {root}")


# Directory names never descended into.
_SKIP_DIRS = {
    ".git",
    ".hg",
    ".svn",
    "__pycache__",
    ".venv",
    "venv",
    "node_modules",
    ".mypy_cache",
    ".pytest_cache",
    ".ruff_cache",
    ".hypothesis",
    ".tox",
    ".eggs",
    "build",
    "dist",
}

# External roots that are language machinery rather than dependencies; edges
# into them are dropped instead of stubbed.
_LANGUAGE_ROOTS = {
    "typing",
    "typing_extensions",
    "collections",
    "abc",
    "builtins",
    "enum",
    "dataclasses",
    "functools",
    "__future__",
}

_BUILTIN_TYPE_NAMES = {
    "int",
    "float",
    "str",
    "bool",
    "bytes",
    "bytearray",
    "complex",
    "object",
    "type",
    "list",
    "dict",
    "set",
    "frozenset",
    "tuple",
    "None",
    "NoneType",
    "Any",
    "Optional",
    "Union",
    "Callable",
    "ClassVar",
    "Final",
    "Literal",
    "Annotated",
    "Iterable",
    "Iterator",
    "Sequence",
    "Mapping",
    "MutableMapping",
    "MutableSequence",
    "Generator",
    "Coroutine",
    "Awaitable",
    "Hashable",
    "Self",
    "TypeAlias",
    "TypeVar",
    "Generic",
    "Protocol",
    "Ellipsis",
}

_OPERATOR_DUNDERS = {
    "__add__", "__radd__", "__iadd__", "__sub__", "__rsub__", "__isub__",
    "__mul__", "__rmul__", "__imul__", "__truediv__", "__rtruediv__",
    "__itruediv__", "__floordiv__", "__rfloordiv__", "__ifloordiv__",
    "__mod__", "__rmod__", "__imod__", "__pow__", "__rpow__", "__ipow__",
    "__matmul__", "__rmatmul__", "__imatmul__", "__and__", "__rand__",
    "__iand__", "__or__", "__ror__", "__ior__", "__xor__", "__rxor__",
    "__ixor__", "__lshift__", "__rshift__", "__ilshift__", "__irshift__",
    "__neg__", "__pos__", "__abs__", "__invert__", "__eq__", "__ne__",
    "__lt__", "__le__", "__gt__", "__ge__", "__getitem__", "__setitem__",
    "__delitem__", "__contains__", "__call__", "__iter__", "__next__",
    "__len__", "__bool__",
}

_ENUM_BASES = {"Enum", "IntEnum", "StrEnum", "Flag", "IntFlag", "ReprEnum"}
_INTERFACE_BASES = {"Protocol", "ABC"}

# The documented construct -> entity mapping, one row per source construct the
# parser can emit. Mostly self-describing; rules reference the naming
# convention (leading underscores) and the ClassVar/decorator checks below.
SOURCE_MAPPING: tuple[tuple[str, str], ...] = (
    ("workspace root", "solution"),
    ("distribution package", "project"),
    ("external requirement", "package (detached)"),
    ("module file", "namespace"),
    ("class definition", "type/class"),
    ("frozen dataclass or NamedTuple", "type/struct"),
    ("Enum subclass", "type/enum"),
    ("Protocol or ABC subclass", "type/interface"),
    ("Callable type alias", "type/delegate"),
    ("module-level function", "method (static, ordinary)"),
    ("instance method", "method (instance)"),
    ("staticmethod/classmethod", "method (static)"),
    ("__init__ / __new__", "method (constructor)"),
    ("operator dunder", "method (operator)"),
    ("property accessor pair", "property"),
    ("class-body field", "field (ClassVar => static)"),
    ("module-level binding", "field (static)"),
)


# ---------------------------------------------------------------------------
# Parsed intermediate representation


@dataclass
class Declaration:
    """One mapped declaration; `construct` names its SOURCE_MAPPING row."""

    construct: str
    name: str
    kind: EntityKind
    type_kind: TypeKind | None = None
    method_kind: MethodKind | None = None
    accessibility: Accessibility | None = None
    is_static: bool = False
    doc: tuple[str, ...] | None = None
    line_start: int = 0
    line_end: int = 0
    type_params: int = 0
    param_types: tuple[str, ...] = ()
    base_refs: tuple[str, ...] = ()
    annotation_refs: tuple[str, ...] = ()
    return_refs: tuple[str, ...] = ()
    members: list["Declaration"] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def sort_name(self) -> str:
        if self.type_params:
            return f"{self.name}`{self.type_params}"
        return self.name

    @property
    def disambiguator(self) -> str:
        if self.kind == EntityKind.METHOD:
            return f"{len(self.param_types)}:{','.join(self.param_types)}"
        return ""


@dataclass
class ParsedModule:
    module_name: str
    rel_path: str
    line_count: int
    doc: tuple[str, ...] | None = None
    declarations: list[Declaration] = field(default_factory=list)
    import_aliases: dict[str, str] = field(default_factory=dict)
    from_imports: dict[str, tuple[str, str]] = field(default_factory=dict)
    parse_error: Diagnostic | None = None


# ---------------------------------------------------------------------------
# Doc comments


def clean_doc_text(text: str) -> tuple[str, ...]:
    """Split into paragraphs; prose lines are reflowed, indented blocks kept
    verbatim, double-backtick spans reduced to single backticks."""
    import inspect

    import textwrap

    cleaned = inspect.cleandoc(text)
    cleaned = cleaned.replace("``", "`")
    paragraphs: list[str] = []
    for block in re.split(r"\n\s*\n", cleaned):
        if not block.strip():
            continue
        lines = block.splitlines()
        if any(line.startswith((" ", "\t")) for line in lines):
            # Code-like block: keep line structure, drop the common indent.
            dedented = textwrap.dedent(block)
            paragraphs.append("\n".join(line.rstrip() for line in dedented.splitlines()))
        else:
            paragraphs.append(" ".join(line.strip() for line in lines))
    return tuple(paragraphs)


def extract_doc_comment(node: ast.AST) -> tuple[str, ...] | None:
    """Doc comment of a module/class/function as structured paragraphs."""
    if not isinstance(node, (ast.Module, ast.ClassDef, ast.FunctionDef, ast.AsyncFunctionDef)):
        return None
    raw = ast.get_docstring(node, clean=False)
    if raw is None:
        return None
    paragraphs = clean_doc_text(raw)
    return paragraphs or None


def doc_text(paragraphs: tuple[str, ...] | None) -> str | None:
    return "\n\n".join(paragraphs) if paragraphs else None


# ---------------------------------------------------------------------------
# AST mapping helpers


def _dotted_name(node: ast.AST) -> str | None:
    if isinstance(node, ast.Name):
        return node.id
    if isinstance(node, ast.Attribute):
        base = _dotted_name(node.value)
        return f"{base}.{node.attr}" if base else None
    return None


def _annotation_refs(node: ast.AST | None) -> tuple[str, ...]:
    """Type-name references inside an annotation expression, in source order."""
    if node is None:
        return ()
    refs: list[str] = []

    def walk(expr: ast.AST) -> None:
        if isinstance(expr, ast.Name):
            refs.append(expr.id)
        elif isinstance(expr, ast.Attribute):
            dotted = _dotted_name(expr)
            if dotted:
                refs.append(dotted)
        elif isinstance(expr, ast.Subscript):
            walk(expr.value)
            walk(expr.slice)
        elif isinstance(expr, ast.Constant) and isinstance(expr.value, str):
            try:
                walk(ast.parse(expr.value, mode="eval").body)
            except SyntaxError:
                pass
        elif isinstance(expr, ast.BinOp):
            walk(expr.left)
            walk(expr.right)
        elif isinstance(expr, (ast.Tuple, ast.List)):
            for element in expr.elts:
                walk(element)

    walk(node)
    out = []
    for ref in refs:
        head = ref.split(".", 1)[0]
        if ref in _BUILTIN_TYPE_NAMES or head in _BUILTIN_TYPE_NAMES:
            continue
        out.append(ref)
    return tuple(out)


def _contains_callable(node: ast.AST | None) -> bool:
    if node is None:
        return False
    for sub in ast.walk(node):
        if isinstance(sub, (ast.Name, ast.Attribute)):
            dotted = _dotted_name(sub)
            if dotted and dotted.split(".")[-1] == "Callable":
                return True
    return False


def _accessibility(name: str) -> Accessibility:
    if name.startswith("__") and not name.endswith("__"):
        return Accessibility.PRIVATE
    if name.startswith("_"):
        return Accessibility.INTERNAL
    return Accessibility.PUBLIC


def _decorator_names(node: ast.FunctionDef | ast.AsyncFunctionDef | ast.ClassDef) -> list[str]:
    names = []
    for decorator in node.decorator_list:
        target = decorator.func if isinstance(decorator, ast.Call) else decorator
        dotted = _dotted_name(target)
        if dotted:
            names.append(dotted)
    return names


def _decorator_kwargs(node: ast.ClassDef, decorator_name: str) -> dict[str, object]:
    for decorator in node.decorator_list:
        if isinstance(decorator, ast.Call):
            dotted = _dotted_name(decorator.func)
            if dotted and dotted.split(".")[-1] == decorator_name:
                out: dict[str, object] = {}
                for kw in decorator.keywords:
                    if kw.arg and isinstance(kw.value, ast.Constant):
                        out[kw.arg] = kw.value.value
                return out
    return {}


def _span(node: ast.AST) -> tuple[int, int]:
    return (getattr(node, "lineno", 1), getattr(node, "end_lineno", getattr(node, "lineno", 1)))


def _type_param_count(node: ast.ClassDef) -> int:
    # PEP 695 type params when available, else Generic[...] arity.
    params = getattr(node, "type_params", None)
    if params:
        return len(params)
    for base in node.bases:
        if isinstance(base, ast.Subscript):
            dotted = _dotted_name(base.value)
            if dotted and dotted.split(".")[-1] == "Generic":
                slice_node = base.slice
                if isinstance(slice_node, ast.Tuple):
                    return len(slice_node.elts)
                return 1
    return 0


def map_class(node: ast.ClassDef) -> tuple[TypeKind, tuple[str, ...], str]:
    """(type kind, base refs, mapping-row label) for a class declaration."""
    base_names: list[str] = []
    for base in node.bases:
        target = base.value if isinstance(base, ast.Subscript) else base
        dotted = _dotted_name(target)
        if dotted:
            base_names.append(dotted)
    last_segments = {name.split(".")[-1] for name in base_names}
    decorators = {name.split(".")[-1] for name in _decorator_names(node)}

    if last_segments & _ENUM_BASES:
        return TypeKind.ENUM, tuple(base_names), "Enum subclass"
    if last_segments & _INTERFACE_BASES:
        return TypeKind.INTERFACE, tuple(base_names), "Protocol or ABC subclass"
    for keyword in node.keywords:
        if keyword.arg == "metaclass":
            dotted = _dotted_name(keyword.value)
            if dotted and dotted.split(".")[-1] == "ABCMeta":
                return TypeKind.INTERFACE, tuple(base_names), "Protocol or ABC subclass"
    if "NamedTuple" in last_segments:
        return TypeKind.STRUCT, tuple(base_names), "frozen dataclass or NamedTuple"
    if "dataclass" in decorators and _decorator_kwargs(node, "dataclass").get("frozen") is True:
        return TypeKind.STRUCT, tuple(base_names), "frozen dataclass or NamedTuple"
    return TypeKind.CLASS, tuple(base_names), "class definition"


def map_function(
    node: ast.FunctionDef | ast.AsyncFunctionDef, *, module_level: bool
) -> Declaration | None:
    """Map a def to a method/property declaration; None for property setters
    (they merge into the getter's declaration)."""
    decorators = [name.split(".")[-1] for name in _decorator_names(node)]
    dotted_decorators = _decorator_names(node)
    is_setter_like = any(name.endswith((".setter", ".deleter")) for name in dotted_decorators)
    if is_setter_like:
        return None

    params: list[str] = []
    args = node.args
    positional = list(args.posonlyargs) + list(args.args)
    skip_first = not module_level and "staticmethod" not in decorators
    for i, arg in enumerate(positional):
        if i == 0 and skip_first:
            continue  # self / cls receiver
        params.append(ast.unparse(arg.annotation) if arg.annotation else "")
    if args.vararg is not None:
        params.append("*")
    for arg in args.kwonlyargs:
        params.append(ast.unparse(arg.annotation) if arg.annotation else "")
    if args.kwarg is not None:
        params.append("**")

    annotation_refs: list[str] = []
    for arg in positional + list(args.kwonlyargs):
        annotation_refs.extend(_annotation_refs(arg.annotation))
    return_refs = _annotation_refs(node.returns)
    start, end = _span(node)

    if not module_level and "property" in decorators:
        return Declaration(
            construct="property accessor pair",
            name=node.name,
            kind=EntityKind.PROPERTY,
            accessibility=_accessibility(node.name),
            is_static=False,
            doc=extract_doc_comment(node),
            line_start=start,
            line_end=end,
            annotation_refs=return_refs,
        )

    if module_level:
        method_kind = MethodKind.ORDINARY
        construct = "module-level function"
        is_static = True
    elif node.name in ("__init__", "__new__"):
        method_kind = MethodKind.CONSTRUCTOR
        construct = "__init__ / __new__"
        is_static = node.name == "__new__"
    elif node.name in _OPERATOR_DUNDERS:
        method_kind = MethodKind.OPERATOR
        construct = "operator dunder"
        is_static = False
    elif "staticmethod" in decorators or "classmethod" in decorators:
        method_kind = MethodKind.ORDINARY
        construct = "staticmethod/classmethod"
        is_static = True
    else:
        method_kind = MethodKind.ORDINARY
        construct = "instance method"
        is_static = False

    return Declaration(
        construct=construct,
        name=node.name,
        kind=EntityKind.METHOD,
        method_kind=method_kind,
        accessibility=_accessibility(node.name),
        is_static=is_static,
        doc=extract_doc_comment(node),
        line_start=start,
        line_end=end,
        param_types=tuple(params),
        annotation_refs=tuple(annotation_refs),
        return_refs=return_refs,
    )


def _assignment_targets(node: ast.Assign | ast.AnnAssign) -> list[str]:
    names: list[str] = []
    targets = node.targets if isinstance(node, ast.Assign) else [node.target]
    for target in targets:
        if isinstance(target, ast.Name):
            names.append(target.id)
        elif isinstance(target, (ast.Tuple, ast.List)):
            for element in target.elts:
                if isinstance(element, ast.Name):
                    names.append(element.id)
    return names


def _is_class_var(annotation: ast.AST | None) -> bool:
    if annotation is None:
        return False
    target = annotation.value if isinstance(annotation, ast.Subscript) else annotation
    dotted = _dotted_name(target)
    return bool(dotted) and dotted.split(".")[-1] == "ClassVar"


def map_assignment(
    node: ast.Assign | ast.AnnAssign, *, module_level: bool
) -> list[Declaration]:
    """Map a binding to field declarations (or a delegate type alias)."""
    names = [n for n in _assignment_targets(node) if not (n.startswith("__") and n.endswith("__"))]
    if not names:
        return []
    start, end = _span(node)
    annotation = node.annotation if isinstance(node, ast.AnnAssign) else None
    value = node.value

    is_alias_annotation = annotation is not None and (
        (_dotted_name(annotation) or "").split(".")[-1] == "TypeAlias"
    )
    if module_level and value is not None and (
        _contains_callable(value) if (is_alias_annotation or isinstance(node, ast.Assign)) else False
    ):
        return [
            Declaration(
                construct="Callable type alias",
                name=name,
                kind=EntityKind.TYPE,
                type_kind=TypeKind.DELEGATE,
                accessibility=_accessibility(name),
                line_start=start,
                line_end=end,
                annotation_refs=_annotation_refs(value),
            )
            for name in names
        ]

    refs = _annotation_refs(annotation)
    if module_level:
        construct = "module-level binding"
        is_static = True
    else:
        construct = "class-body field"
        is_static = _is_class_var(annotation)
    return [
        Declaration(
            construct=construct,
            name=name,
            kind=EntityKind.FIELD,
            accessibility=_accessibility(name),
            is_static=is_static,
            line_start=start,
            line_end=end,
            annotation_refs=refs,
        )
        for name in names
    ]


def map_construct(node: ast.AST, *, module_level: bool = True) -> list[Declaration]:
    """Map one parsed declaration onto the entity vocabulary.

    Returns no declarations for constructs outside the mapping (imports,
    statements); class declarations come back with their members attached.
    """
    if isinstance(node, ast.ClassDef):
        return [_map_class_tree(node)]
    if isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef)):
        mapped = map_function(node, module_level=module_level)
        return [mapped] if mapped else []
    if isinstance(node, (ast.Assign, ast.AnnAssign)):
        return map_assignment(node, module_level=module_level)
    return []


def _map_class_tree(node: ast.ClassDef) -> Declaration:
    type_kind, base_refs, construct = map_class(node)
    start, end = _span(node)
    declaration = Declaration(
        construct=construct,
        name=node.name,
        kind=EntityKind.TYPE,
        type_kind=type_kind,
        accessibility=_accessibility(node.name),
        is_static=False,
        doc=extract_doc_comment(node),
        line_start=start,
        line_end=end,
        type_params=_type_param_count(node),
        base_refs=base_refs,
    )
    property_spans: dict[str, Declaration] = {}
    for stmt in node.body:
        if isinstance(stmt, (ast.FunctionDef, ast.AsyncFunctionDef)):
            dotted = _decorator_names(stmt)
            if any(name.endswith((".setter", ".deleter")) for name in dotted):
                # Accessor pair: extend the getter's span.
                getter = property_spans.get(stmt.name)
                if getter is not None:
                    getter.line_end = max(getter.line_end, _span(stmt)[1])
                continue
            mapped = map_function(stmt, module_level=False)
            if mapped is None:
                continue
            if mapped.kind == EntityKind.PROPERTY:
                property_spans[mapped.name] = mapped
            declaration.members.append(mapped)
        elif isinstance(stmt, (ast.Assign, ast.AnnAssign)):
            declaration.members.extend(map_assignment(stmt, module_level=False))
        elif isinstance(stmt, ast.ClassDef):
            nested = _map_class_tree(stmt)
            nested.extra["nested"] = True
            declaration.members.append(nested)
    _dedupe_members(declaration.members)
    return declaration


def _dedupe_members(members: list[Declaration]) -> None:
    """Redefinitions of the same signature: the last one wins, as at runtime."""
    seen: dict[tuple, int] = {}
    keep: list[Declaration] = []
    for member in members:
        key = (member.kind.rank, member.sort_name, member.disambiguator)
        if key in seen:
            keep[seen[key]] = member
        else:
            seen[key] = len(keep)
            keep.append(member)
    members[:] = keep


# ---------------------------------------------------------------------------
# File parsing


def parse_module(source: str, module_name: str, rel_path: str) -> ParsedModule:
    line_count = source.count("\n") + 1
    try:
        tree = ast.parse(source)
    except SyntaxError as exc:
        return ParsedModule(
            module_name=module_name,
            rel_path=rel_path,
            line_count=line_count,
            parse_error=Diagnostic(
                severity=Severity.ERROR,
                code="parse-error",
                message=str(exc.msg),
                file=rel_path,
                line=exc.lineno,
                column=exc.offset,
            ),
        )

    module = ParsedModule(
        module_name=module_name,
        rel_path=rel_path,
        line_count=line_count,
        doc=extract_doc_comment(tree),
    )
    package = module_name.rsplit(".", 1)[0] if "." in module_name else ""
    for stmt in tree.body:
        if isinstance(stmt, ast.Import):
            for alias in stmt.names:
                bound = alias.asname or alias.name.split(".")[0]
                module.import_aliases[bound] = alias.name if alias.asname else alias.name.split(".")[0]
                if alias.asname is None and "." in alias.name:
                    # `import a.b` binds `a`; remember the full path too for
                    # resolving `a.b.X` references.
                    module.import_aliases.setdefault(alias.name, alias.name)
        elif isinstance(stmt, ast.ImportFrom):
            source_module = _resolve_relative(stmt.module, stmt.level, module_name, package)
            if source_module is None:
                continue
            for alias in stmt.names:
                if alias.name == "*":
                    continue
                module.from_imports[alias.asname or alias.name] = (source_module, alias.name)
        else:
            module.declarations.extend(map_construct(stmt, module_level=True))
    _dedupe_members(module.declarations)
    return module


def _resolve_relative(target: str | None, level: int, module_name: str, package: str) -> str | None:
    if level == 0:
        return target
    parts = module_name.split(".")
    # Relative imports resolve against the containing package.
    if len(parts) < level:
        return None
    base = parts[: len(parts) - level]
    if target:
        base.append(target)
    return ".".join(base) if base else None


# ---------------------------------------------------------------------------
# Workspace discovery


@dataclass
class ProjectInfo:
    name: str
    directory: Path
    rel_dir: str
    dependencies: tuple[str, ...] = ()


@dataclass
class WorkspaceInfo:
    root: Path
    solution_name: str
    projects: list[ProjectInfo]
    has_manifest: bool


_REQUIREMENT_NAME = re.compile(r"^\s*([A-Za-z0-9][A-Za-z0-9._-]*)")


def canonical_package_name(name: str) -> str:
    return re.sub(r"[-_.]+", "-", name).lower()


def _requirement_name(spec: str) -> str | None:
    m = _REQUIREMENT_NAME.match(spec)
    return m.group(1) if m else None


def _read_manifest(path: Path) -> dict:
    try:
        return tomllib.loads(path.read_text(encoding="utf-8"))
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise WorkspaceError(f"cannot read manifest {path}: {exc}") from exc


def _project_from_manifest(directory: Path, root: Path) -> ProjectInfo:
    data = _read_manifest(directory / "pyproject.toml")
    project_table = data.get("project", {})
    name = project_table.get("name") or directory.name
    deps = tuple(
        dep for dep in project_table.get("dependencies", []) if isinstance(dep, str)
    )
    rel = directory.relative_to(root).as_posix() if directory != root else "."
    return ProjectInfo(name=name, directory=directory, rel_dir=rel, dependencies=deps)


def discover_workspace(root: Path) -> WorkspaceInfo:
    """Locate the solution and its projects under the root path."""
    root = Path(root)
    manifest_path = root / "pyproject.toml"
    projects: list[ProjectInfo] = []
    solution_name = root.name or "workspace"
    has_manifest = manifest_path.is_file()

    if has_manifest:
        data = _read_manifest(manifest_path)
        tool = data.get("tool", {})
        workspace_table = tool.get("codecarta", {}).get("workspace") or tool.get("uv", {}).get(
            "workspace"
        )
        if isinstance(workspace_table, dict):
            solution_name = workspace_table.get("name") or solution_name
            member_dirs: list[Path] = []
            for pattern in workspace_table.get("members", []):
                member_dirs.extend(
                    p for p in sorted(root.glob(pattern)) if (p / "pyproject.toml").is_file()
                )
            for directory in member_dirs:
                projects.append(_project_from_manifest(directory, root))
        if "project" in data:
            projects.insert(0, _project_from_manifest(root, root))
        if not projects and not isinstance(workspace_table, dict):
            projects = _scan_for_projects(root)
    else:
        projects = _scan_for_projects(root)

    if not projects and not has_manifest:
        if _has_python_files(root):
            projects = [ProjectInfo(name=root.name or "project", directory=root, rel_dir=".")]
        else:
            raise EmptyWorkspaceError(
                f"no workspace manifest and no Python sources under {root}"
            )
    elif not projects and has_manifest and _has_python_files(root):
        projects = [ProjectInfo(name=root.name or "project", directory=root, rel_dir=".")]

    # Deterministic order; names kept unique per sibling scope by rel_dir.
    unique: dict[str, ProjectInfo] = {}
    for project in projects:
        unique.setdefault(project.rel_dir, project)
    projects = sorted(unique.values(), key=lambda p: (p.name, p.rel_dir))
    return WorkspaceInfo(
        root=root, solution_name=solution_name, projects=projects, has_manifest=has_manifest
    )


def _scan_for_projects(root: Path) -> list[ProjectInfo]:
    found: list[ProjectInfo] = []
    stack = [root]
    while stack:
        directory = stack.pop()
        for child in sorted(directory.iterdir()):
            if not child.is_dir() or child.name in _SKIP_DIRS or child.name.startswith("."):
                continue
            if (child / "pyproject.toml").is_file():
                found.append(_project_from_manifest(child, root))
            else:
                stack.append(child)
    return found


def _has_python_files(root: Path) -> bool:
    stack = [root]
    while stack:
        directory = stack.pop()
        for child in sorted(directory.iterdir()):
            if child.is_dir():
                if child.name not in _SKIP_DIRS and not child.name.startswith("."):
                    stack.append(child)
            elif child.suffix == ".py":
                return True
    return False


# ---------------------------------------------------------------------------
# Source enumeration


def _matches_any(rel_path: str, patterns: Iterable[str]) -> bool:
    parts = rel_path.split("/")
    prefixes = ["/".join(parts[: i + 1]) for i in range(len(parts))]
    for pattern in patterns:
        for candidate in prefixes:
            if fnmatch.fnmatch(candidate, pattern):
                return True
    return False


def _project_files(
    project: ProjectInfo, all_dirs: list[Path], cfg: MinerConfig
) -> list[Path]:
    """Python files owned by this project (nested projects excluded)."""
    nested = [d for d in all_dirs if d != project.directory and project.directory in d.parents]
    out: list[Path] = []
    stack = [project.directory]
    while stack:
        directory = stack.pop()
        for child in sorted(directory.iterdir()):
            if child.is_dir():
                if (
                    child.name in _SKIP_DIRS
                    or child.name.startswith(".")
                    or child.name.endswith(".egg-info")
                    or child in nested
                ):
                    continue
                stack.append(child)
            elif child.suffix == ".py":
                rel = child.relative_to(cfg.root_path).as_posix()
                if cfg.include_globs and not _matches_any(rel, cfg.include_globs):
                    continue
                if _matches_any(rel, cfg.exclude_globs):
                    continue
                out.append(child)
    return sorted(out)


def _module_name(file_path: Path, project: ProjectInfo) -> str:
    src_root = project.directory / "src"
    base = src_root if src_root.is_dir() and src_root in file_path.parents else project.directory
    rel = file_path.relative_to(base)
    parts = list(rel.parts)
    parts[-1] = rel.stem
    if parts[-1] == "__init__":
        parts.pop()
    return ".".join(parts) if parts else project.name


# ---------------------------------------------------------------------------
# Mining


def mine(config: MinerConfig) -> EntityGraph:
    """Statically analyze the workspace into a validated entity graph."""
    root = Path(config.root_path)
    workspace = discover_workspace(root)
    project_dirs = [p.directory for p in workspace.projects]

    # Parse every file; per-file parallelism with a deterministic merge order.
    jobs: list[tuple[ProjectInfo, Path, str]] = []
    for project in workspace.projects:
        for file_path in _project_files(project, project_dirs, config):
            jobs.append((project, file_path, _module_name(file_path, project)))

    def run_job(job: tuple[ProjectInfo, Path, str]) -> ParsedModule:
        project, file_path, module_name = job
        rel = file_path.relative_to(root).as_posix()
        try:
            source = file_path.read_text(encoding="utf-8", errors="replace")
        except OSError as exc:
            parsed = ParsedModule(module_name=module_name, rel_path=rel, line_count=1)
            parsed.parse_error = Diagnostic(
                Severity.ERROR, "io-error", str(exc), file=rel, line=1
            )
            return parsed
        return parse_module(source, module_name, rel)

    if config.thread_count > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=config.thread_count) as pool:
            parsed_modules = list(pool.map(run_job, jobs))
    else:
        parsed_modules = [run_job(job) for job in jobs]

    modules_by_project: dict[str, list[ParsedModule]] = {}
    for (project, _, _), parsed in zip(jobs, parsed_modules):
        modules_by_project.setdefault(project.rel_dir, []).append(parsed)

    builder = GraphBuilder()
    solution = builder.add(None, EntityKind.SOLUTION, workspace.solution_name)

    project_handles: dict[str, int] = {}
    project_name_index: dict[str, int] = {}
    for project in workspace.projects:
        handle = builder.add(
            solution,
            EntityKind.PROJECT,
            project.name,
            disambiguator=project.rel_dir,
            extra={"dir": project.rel_dir},
        )
        project_handles[project.rel_dir] = handle
        project_name_index.setdefault(canonical_package_name(project.name), handle)

    # module name -> (handle, {qualified class name -> handle})
    module_index: dict[str, tuple[int, dict[str, int]]] = {}
    declaration_handles: list[tuple[ParsedModule, Declaration, int]] = []

    for project in workspace.projects:
        for parsed in modules_by_project.get(project.rel_dir, ()):
            extra = {
                "file": parsed.rel_path,
                "lineStart": 1,
                "lineEnd": parsed.line_count,
            }
            diagnostics = (parsed.parse_error,) if parsed.parse_error else ()
            ns_handle = builder.add(
                project_handles[project.rel_dir],
                EntityKind.NAMESPACE,
                parsed.module_name,
                disambiguator=parsed.rel_path,
                doc_comment=doc_text(parsed.doc),
                diagnostics=diagnostics,
                extra=extra,
            )
            class_index: dict[str, int] = {}
            module_index[parsed.module_name] = (ns_handle, class_index)
            _add_declarations(
                builder,
                ns_handle,
                parsed,
                parsed.declarations,
                class_index,
                declaration_handles,
                prefix="",
            )

    # External packages: declared requirements plus (optionally) stubs for
    # unresolved references. All detached roots.
    package_handles: dict[str, int] = {}

    def package_handle(name: str, requirement: str | None = None) -> int:
        canonical = canonical_package_name(name)
        if canonical not in package_handles:
            extra = {"requirement": requirement} if requirement else {"stub": True}
            package_handles[canonical] = builder.add(
                None, EntityKind.PACKAGE, canonical, extra=extra
            )
        return package_handles[canonical]

    for project in workspace.projects:
        src = project_handles[project.rel_dir]
        for dep in project.dependencies:
            dep_name = _requirement_name(dep)
            if dep_name is None:
                continue
            canonical = canonical_package_name(dep_name)
            target = project_name_index.get(canonical)
            if target is not None and target != src:
                builder.relate(RelationId.DEPENDS_ON, src, target)
            elif target != src:
                builder.relate(RelationId.DEPENDS_ON, src, package_handle(dep_name, dep))

    # Cross-entity edges by best-effort name resolution.
    for parsed, declaration, handle in declaration_handles:
        for relation, refs in (
            (RelationId.INHERITS_FROM, declaration.base_refs),
            (RelationId.TYPE_OF, declaration.annotation_refs),
            (RelationId.RETURNS, declaration.return_refs),
        ):
            for ref in refs:
                target = _resolve_reference(ref, parsed, module_index)
                if target is None:
                    continue
                kind, value = target
                if kind == "entity":
                    if value != handle:
                        builder.relate(relation, handle, value)
                elif config.follow_external_packages:
                    builder.relate(relation, handle, package_handle(value))

    graph = builder.build()
    if not graph.entities:
        raise EmptyWorkspaceError(f"no entities discovered under {root}")
    graph = _break_dependency_cycles(graph)
    report = validate_graph(graph)
    if not report.ok:
        raise GraphValidationError(report)
    if config.diagnostics_file is not None:
        graph = ingest_diagnostics(graph, config.diagnostics_file)
    return graph


def _add_declarations(
    builder: GraphBuilder,
    parent_handle: int,
    parsed: ParsedModule,
    declarations: list[Declaration],
    class_index: dict[str, int],
    out_handles: list[tuple[ParsedModule, Declaration, int]],
    prefix: str,
) -> None:
    for declaration in declarations:
        qualified = f"{prefix}{declaration.name}"
        extra = dict(declaration.extra)
        extra.update(
            {
                "file": parsed.rel_path,
                "lineStart": declaration.line_start,
                "lineEnd": declaration.line_end,
            }
        )
        if declaration.kind == EntityKind.TYPE and declaration.type_params:
            extra["typeParams"] = declaration.type_params
        handle = builder.add(
            parent_handle,
            declaration.kind,
            qualified,
            sort_name=(
                f"{qualified}`{declaration.type_params}"
                if declaration.type_params
                else qualified
            ),
            disambiguator=declaration.disambiguator,
            type_kind=declaration.type_kind,
            method_kind=declaration.method_kind,
            accessibility=declaration.accessibility,
            is_static=declaration.is_static,
            doc_comment=doc_text(declaration.doc),
            extra=extra,
        )
        out_handles.append((parsed, declaration, handle))
        if declaration.kind == EntityKind.TYPE:
            class_index[qualified] = handle
            # Nested classes are flattened beside their owner, qualified by it.
            nested = [m for m in declaration.members if m.kind == EntityKind.TYPE]
            flat = [m for m in declaration.members if m.kind != EntityKind.TYPE]
            _add_declarations(
                builder, handle, parsed, flat, class_index, out_handles, prefix=""
            )
            if nested:
                _add_declarations(
                    builder,
                    parent_handle,
                    parsed,
                    nested,
                    class_index,
                    out_handles,
                    prefix=f"{qualified}.",
                )


def _resolve_reference(
    ref: str,
    parsed: ParsedModule,
    module_index: Mapping[str, tuple[int, dict[str, int]]],
) -> tuple[str, object] | None:
    """Resolve a dotted type reference to ("entity", handle) or
    ("external", root name); None when the reference should be dropped."""
    own = module_index.get(parsed.module_name)
    if own is not None and ref in own[1]:
        return ("entity", own[1][ref])

    head, _, rest = ref.partition(".")

    if head in parsed.from_imports:
        source_module, symbol = parsed.from_imports[head]
        target_name = symbol if not rest else f"{symbol}.{rest}"
        entry = module_index.get(source_module)
        if entry is not None and target_name in entry[1]:
            return ("entity", entry[1][target_name])
        # `from pkg import mod` where mod is a module of the workspace.
        submodule = module_index.get(f"{source_module}.{symbol}")
        if submodule is not None and rest:
            sub_head, _, sub_rest = rest.partition(".")
            qualified = sub_head if not sub_rest else f"{sub_head}.{sub_rest}"
            if qualified in submodule[1]:
                return ("entity", submodule[1][qualified])
        root_name = source_module.split(".")[0]
        if module_index.get(source_module) is None and root_name not in _LANGUAGE_ROOTS:
            return ("external", root_name)
        return None

    if head in parsed.import_aliases and rest:
        base_module = parsed.import_aliases[head]
        # The reference's module part may extend the alias: a.b.Cls where the
        # alias binds a -> a.
        full = f"{base_module}.{rest}" if base_module != head else ref
        module_part, _, class_part = full.rpartition(".")
        entry = module_index.get(module_part)
        if entry is not None and class_part in entry[1]:
            return ("entity", entry[1][class_part])
        root_name = full.split(".")[0]
        if root_name not in _LANGUAGE_ROOTS and module_index.get(module_part) is None:
            return ("external", root_name)
        return None

    # Same-module bare name that is not a class, or an unknown bare name.
    return None


def _break_dependency_cycles(g: EntityGraph) -> EntityGraph:
    """Manifests can lie: drop deterministic back-edges so dependsOn stays a
    DAG, flagging each dropped edge with a warning on its source project."""
    depends = sorted(g.edges(RelationId.DEPENDS_ON))
    adjacency: dict = {}
    for src, dst in depends:
        adjacency.setdefault(src, []).append(dst)
    dropped: list[tuple] = []
    state: dict = {}

    def visit(node) -> None:
        state[node] = 1
        for nxt in adjacency.get(node, ()):
            mark = state.get(nxt, 0)
            if mark == 0:
                visit(nxt)
            elif mark == 1:
                dropped.append((node, nxt))
        state[node] = 2

    for node in sorted(adjacency):
        if state.get(node, 0) == 0:
            visit(node)
    if not dropped:
        return g

    kept = frozenset(edge for edge in g.edges(RelationId.DEPENDS_ON) if edge not in set(dropped))
    relations = dict(g.relations)
    relations[RelationId.DEPENDS_ON] = kept
    entities = dict(g.entities)
    for src, dst in dropped:
        entity = entities[src]
        warning = Diagnostic(
            Severity.WARNING,
            "circular-dependency",
            f"dependency cycle broken: edge to {entities[dst].name} ignored",
        )
        entities[src] = replace(entity, diagnostics=entity.diagnostics + (warning,))
    return EntityGraph(g.schema_version, entities, relations)


# ---------------------------------------------------------------------------
# Diagnostics ingestion


def parse_diagnostics_report(text: str) -> list[Diagnostic]:
    """Newline-delimited JSON records with severity/code/message/file/line/column."""
    out: list[Diagnostic] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DiagnosticsFormatError(f"not valid JSON: {exc.msg}", line_number) from exc
        if not isinstance(record, dict):
            raise DiagnosticsFormatError("record must be an object", line_number)
        try:
            severity = Severity(record["severity"])
        except (KeyError, ValueError):
            raise DiagnosticsFormatError(
                f"severity must be one of error/warning/hint, got {record.get('severity')!r}",
                line_number,
            ) from None
        code = record.get("code")
        message = record.get("message")
        if not isinstance(code, str) or not isinstance(message, str):
            raise DiagnosticsFormatError("code and message must be strings", line_number)
        file = record.get("file")
        line_no = record.get("line")
        column = record.get("column")
        if file is not None and not isinstance(file, str):
            raise DiagnosticsFormatError("file must be a string", line_number)
        for label, value in (("line", line_no), ("column", column)):
            if value is not None and not isinstance(value, int):
                raise DiagnosticsFormatError(f"{label} must be an integer", line_number)
        out.append(Diagnostic(severity, code, message, file, line_no, column))
    return out


def attach_diagnostic(g: EntityGraph, diagnostic: Diagnostic):
    """Token of the deepest entity whose span contains the diagnostic location;
    falls back to the containing project, then the first solution root."""
    if diagnostic.file is not None:
        best = None
        if diagnostic.line is not None:
            for token in sorted(g.entities):
                entity = g.entities[token]
                if entity.extra.get("file") != diagnostic.file:
                    continue
                start = entity.extra.get("lineStart")
                end = entity.extra.get("lineEnd")
                if not isinstance(start, int) or not isinstance(end, int):
                    continue
                if start <= diagnostic.line <= end:
                    depth = len(token.path)
                    key = (depth, start, token)
                    if best is None or key > best[0]:
                        best = (key, token)
            if best is not None:
                return best[1]
        # Unmatched location: the project whose directory contains the file.
        best_project = None
        for token in sorted(g.entities):
            entity = g.entities[token]
            if entity.kind != EntityKind.PROJECT:
                continue
            directory = entity.extra.get("dir")
            if not isinstance(directory, str):
                continue
            if directory == "." or diagnostic.file == directory or diagnostic.file.startswith(
                directory + "/"
            ):
                depth = len(directory) if directory != "." else 0
                if best_project is None or depth > best_project[0]:
                    best_project = (depth, token)
        if best_project is not None:
            return best_project[1]
    roots = g.solution_roots
    return roots[0] if roots else None


def ingest_diagnostics(g: EntityGraph, report_path: Path | str) -> EntityGraph:
    """Attach every record of a diagnostics report to the right entity."""
    path = Path(report_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DiagnosticsFormatError(f"cannot read {path}: {exc}", 0) from exc
    records = parse_diagnostics_report(text)
    if not records:
        return g
    additions: dict = {}
    for diagnostic in records:
        token = attach_diagnostic(g, diagnostic)
        if token is not None:
            additions.setdefault(token, []).append(diagnostic)
    entities = dict(g.entities)
    for token, diags in additions.items():
        entity = entities[token]
        entities[token] = replace(entity, diagnostics=entity.diagnostics + tuple(diags))
    return EntityGraph(g.schema_version, entities, g.relations)
