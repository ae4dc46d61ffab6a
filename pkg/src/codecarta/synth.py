"""Deterministic synthetic-workspace generator with a ground-truth ledger.

Produces a Python workspace whose mined graph has an exactly known shape: the
ledger records entity counts per kind, relation edge counts, and diagnostic
counts, and mining the tree must reproduce them all. Every choice is driven by
the seed, so the same configuration always yields byte-identical trees. The
planner spends one entity of budget per step, which pins the total node count
to the target exactly. Error/warning rates sample code entities (namespaces,
types, members) into the emitted diagnostics report; the code itself always
parses cleanly.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParameterError
from .model import EntityKind, RelationId

LEDGER_SCHEMA_VERSION = "codecarta-synth-ledger/1"

SOLUTION_NAME = "synthws"


@dataclass(frozen=True)
class SynthConfig:
    projects: int
    target_nodes: int
    seed: int
    error_rate: float = 0.0
    warning_rate: float = 0.0

    def __post_init__(self) -> None:
        if self.projects < 1:
            raise ParameterError("projects must be at least 1")
        if self.target_nodes < self.projects + 1:
            raise ParameterError("targetNodes must be at least projects + 1")
        for label, rate in (("errorRate", self.error_rate), ("warningRate", self.warning_rate)):
            if not 0.0 <= rate <= 1.0:
                raise ParameterError(f"{label} must be within [0, 1]")


@dataclass
class _Member:
    kind: EntityKind
    name: str
    flavor: str  # "field" | "classvar" | "method" | "staticmethod" | "ctor" | "property" | "enum-value" | "stub"
    doc: str | None = None
    type_ref: tuple[str, str] | None = None  # (module, type name) for typeOf
    return_ref: tuple[str, str] | None = None


@dataclass
class _Type:
    name: str
    type_kind: str  # class | struct | enum | interface | delegate
    doc: str | None = None
    base: tuple[str, str] | None = None  # same-module or imported base class
    members: list[_Member] = field(default_factory=list)


@dataclass
class _Module:
    name: str
    doc: str | None = None
    types: list[_Type] = field(default_factory=list)
    functions: list[_Member] = field(default_factory=list)
    constants: list[str] = field(default_factory=list)
    delegates: list[str] = field(default_factory=list)
    imports: set[tuple[str, str]] = field(default_factory=set)  # (module, symbol)


@dataclass
class _Project:
    name: str
    modules: list[_Module] = field(default_factory=list)
    project_deps: list[str] = field(default_factory=list)
    package_deps: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class SynthResult:
    root: Path
    ledger_path: Path
    diagnostics_path: Path
    ledger: dict


def synthesize(config: SynthConfig, out_dir: Path | str) -> SynthResult:
    """Generate the workspace under out_dir and return the ledger."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(config.seed)

    projects = [_Project(name=f"proj{i:02d}") for i in range(config.projects)]
    remaining = config.target_nodes - 1 - config.projects
    package_count = min(3, remaining)
    packages = [f"extpkg{i}" for i in range(package_count)]
    remaining -= package_count

    counters = {"mod": 0, "type": 0, "member": 0, "func": 0, "const": 0, "delegate": 0}
    # Class/struct types usable as reference targets, per project: (module, type).
    referable: dict[int, list[tuple[str, str]]] = {i: [] for i in range(len(projects))}
    edge_sets: dict[RelationId, set[tuple[str, str]]] = {
        RelationId.INHERITS_FROM: set(),
        RelationId.TYPE_OF: set(),
        RelationId.RETURNS: set(),
        RelationId.DEPENDS_ON: set(),
    }

    def maybe_doc(what: str, n: int) -> str | None:
        if rng.random() < 0.3:
            return f"Synthetic {what} number {n}."
        return None

    def fresh_name(prefix: str, counter: str) -> str:
        counters[counter] += 1
        n = counters[counter]
        visibility = rng.random()
        if visibility < 0.05:
            return f"__{prefix}{n}"
        if visibility < 0.2:
            return f"_{prefix}{n}"
        return f"{prefix}{n}"

    def pick_reference(project_index: int, module: _Module) -> tuple[str, str] | None:
        pool = referable[project_index]
        if not pool:
            return None
        target = rng.choice(pool)
        if target[0] != module.name:
            module.imports.add(target)
        return target

    def new_module(project_index: int) -> _Module:
        counters["mod"] += 1
        module = _Module(
            name=f"mod_{counters['mod']:03d}",
            doc=maybe_doc("module", counters["mod"]),
        )
        projects[project_index].modules.append(module)
        return module

    def new_type(project_index: int, module: _Module) -> _Type:
        counters["type"] += 1
        roll = rng.random()
        if roll < 0.58:
            type_kind = "class"
        elif roll < 0.72:
            type_kind = "struct"
        elif roll < 0.84:
            type_kind = "enum"
        else:
            type_kind = "interface"
        name = f"Widget{counters['type']}"
        planned = _Type(name=name, type_kind=type_kind, doc=maybe_doc("type", counters["type"]))
        if type_kind == "class" and rng.random() < 0.3:
            base = pick_reference(project_index, module)
            if base is not None and base != (module.name, name):
                planned.base = base
                edge_sets[RelationId.INHERITS_FROM].add((name, f"{base[0]}.{base[1]}"))
        module.types.append(planned)
        if type_kind in ("class", "struct"):
            referable[project_index].append((module.name, name))
        return planned

    def new_member(project_index: int, module: _Module, planned: _Type) -> None:
        counters["member"] += 1
        n = counters["member"]
        if planned.type_kind == "enum":
            planned.members.append(
                _Member(EntityKind.FIELD, f"VALUE_{n}", "enum-value")
            )
            return
        if planned.type_kind == "struct":
            planned.members.append(_Member(EntityKind.FIELD, f"item_{n}", "field"))
            return
        if planned.type_kind == "interface":
            planned.members.append(
                _Member(EntityKind.METHOD, f"method_{n}", "stub", doc=maybe_doc("method", n))
            )
            return
        roll = rng.random()
        if roll < 0.3:
            flavor = "classvar" if rng.random() < 0.4 else "field"
            member = _Member(EntityKind.FIELD, f"field_{n}", flavor)
            if flavor == "field" and rng.random() < 0.3:
                member.type_ref = pick_reference(project_index, module)
                if member.type_ref is not None:
                    edge_sets[RelationId.TYPE_OF].add(
                        (f"{planned.name}.field_{n}", ".".join(member.type_ref))
                    )
        elif roll < 0.42 and not any(m.flavor == "ctor" for m in planned.members):
            member = _Member(EntityKind.METHOD, "__init__", "ctor")
        elif roll < 0.6:
            member = _Member(
                EntityKind.METHOD, f"method_{n}", "staticmethod", doc=maybe_doc("method", n)
            )
        elif roll < 0.85:
            member = _Member(
                EntityKind.METHOD, f"method_{n}", "method", doc=maybe_doc("method", n)
            )
            if rng.random() < 0.25:
                member.type_ref = pick_reference(project_index, module)
                if member.type_ref is not None:
                    edge_sets[RelationId.TYPE_OF].add(
                        (f"{planned.name}.method_{n}", ".".join(member.type_ref))
                    )
            if rng.random() < 0.25:
                member.return_ref = pick_reference(project_index, module)
                if member.return_ref is not None:
                    edge_sets[RelationId.RETURNS].add(
                        (f"{planned.name}.method_{n}", ".".join(member.return_ref))
                    )
        else:
            member = _Member(
                EntityKind.PROPERTY, f"prop_{n}", "property", doc=maybe_doc("property", n)
            )
            if rng.random() < 0.25:
                member.type_ref = pick_reference(project_index, module)
                if member.type_ref is not None:
                    edge_sets[RelationId.TYPE_OF].add(
                        (f"{planned.name}.prop_{n}", ".".join(member.type_ref))
                    )
        planned.members.append(member)

    def new_function(project_index: int, module: _Module) -> None:
        member = _Member(
            EntityKind.METHOD,
            fresh_name("func_", "func"),
            "function",
            doc=maybe_doc("function", counters["func"]),
        )
        if rng.random() < 0.25:
            member.type_ref = pick_reference(project_index, module)
            if member.type_ref is not None:
                edge_sets[RelationId.TYPE_OF].add(
                    (member.name, ".".join(member.type_ref))
                )
        if rng.random() < 0.25:
            member.return_ref = pick_reference(project_index, module)
            if member.return_ref is not None:
                edge_sets[RelationId.RETURNS].add(
                    (member.name, ".".join(member.return_ref))
                )
        module.functions.append(member)

    # Spend the budget: exactly one future entity per step.
    all_types: list[tuple[int, _Module, _Type]] = []
    for _ in range(remaining):
        project_index = rng.randrange(len(projects))
        project = projects[project_index]
        if not project.modules:
            new_module(project_index)
            continue
        module = rng.choice(project.modules)
        roll = rng.random()
        if roll < 0.06:
            new_module(project_index)
        elif roll < 0.30 or not module.types:
            planned = new_type(project_index, module)
            all_types.append((project_index, module, planned))
        elif roll < 0.80:
            candidates = [t for t in module.types if t.type_kind != "delegate"]
            if candidates:
                new_member(project_index, module, rng.choice(candidates))
            else:
                planned = new_type(project_index, module)
                all_types.append((project_index, module, planned))
        elif roll < 0.90:
            new_function(project_index, module)
        elif roll < 0.97:
            counters["const"] += 1
            module.constants.append(f"CONST_{counters['const']}")
        else:
            counters["delegate"] += 1
            module.delegates.append(f"Handler{counters['delegate']}")

    # Dependencies: a DAG over projects plus at least one user per package.
    for i, project in enumerate(projects):
        for j in range(i):
            if rng.random() < 0.3 and len(project.project_deps) < 3:
                project.project_deps.append(projects[j].name)
                edge_sets[RelationId.DEPENDS_ON].add((project.name, projects[j].name))
        for package in packages:
            if rng.random() < 0.3:
                project.package_deps.append(package)
                edge_sets[RelationId.DEPENDS_ON].add((project.name, package))
    for k, package in enumerate(packages):
        if not any(package in p.package_deps for p in projects):
            chosen = projects[k % len(projects)]
            chosen.package_deps.append(package)
            edge_sets[RelationId.DEPENDS_ON].add((chosen.name, package))

    # Render files, tracking the definition line of every code entity so the
    # diagnostics report can target entities precisely.
    diagnostics: list[dict] = []
    diag_counts = {"error": 0, "warning": 0, "hint": 0}

    def roll_diagnostics(rel_path: str, line: int, label: str) -> None:
        if rng.random() < config.error_rate:
            diag_counts["error"] += 1
            diagnostics.append(
                {
                    "severity": "error",
                    "code": "SYN100",
                    "message": f"synthetic error in {label}",
                    "file": rel_path,
                    "line": line,
                    "column": 1,
                }
            )
        if rng.random() < config.warning_rate:
            diag_counts["warning"] += 1
            diagnostics.append(
                {
                    "severity": "warning",
                    "code": "SYN200",
                    "message": f"synthetic warning in {label}",
                    "file": rel_path,
                    "line": line,
                    "column": 1,
                }
            )

    (out / "pkgs").mkdir(exist_ok=True)
    root_manifest = out / "pyproject.toml"
    root_manifest.write_text(
        f'[tool.codecarta.workspace]\nname = "{SOLUTION_NAME}"\nmembers = ["pkgs/*"]\n',
        encoding="utf-8",
    )

    entity_counts = {
        "solution": 1,
        "project": len(projects),
        "package": len(packages),
        "namespace": 0,
        "type": 0,
        "field": 0,
        "method": 0,
        "property": 0,
        "event": 0,
    }

    for project in projects:
        project_dir = out / "pkgs" / project.name
        project_dir.mkdir(parents=True, exist_ok=True)
        deps = sorted(project.project_deps) + sorted(project.package_deps)
        dep_list = ", ".join(f'"{d}"' for d in deps)
        (project_dir / "pyproject.toml").write_text(
            f'[project]\nname = "{project.name}"\nversion = "0.1.0"\n'
            f"dependencies = [{dep_list}]\n",
            encoding="utf-8",
        )
        for module in project.modules:
            rel_path = f"pkgs/{project.name}/{module.name}.py"
            lines = _render_module(module, rel_path, roll_diagnostics)
            (project_dir / f"{module.name}.py").write_text(
                "\n".join(lines) + "\n", encoding="utf-8"
            )
            entity_counts["namespace"] += 1
            entity_counts["type"] += len(module.types) + len(module.delegates)
            entity_counts["method"] += len(module.functions)
            entity_counts["field"] += len(module.constants)
            for planned in module.types:
                for member in planned.members:
                    entity_counts[member.kind.value] += 1

    total = sum(entity_counts.values())
    relation_counts = {
        "declares": total - 1 - entity_counts["package"],
        "inheritsFrom": len(edge_sets[RelationId.INHERITS_FROM]),
        "typeOf": len(edge_sets[RelationId.TYPE_OF]),
        "returns": len(edge_sets[RelationId.RETURNS]),
        "dependsOn": len(edge_sets[RelationId.DEPENDS_ON]),
    }
    ledger = {
        "schemaVersion": LEDGER_SCHEMA_VERSION,
        "config": {
            "projects": config.projects,
            "targetNodes": config.target_nodes,
            "seed": config.seed,
            "errorRate": config.error_rate,
            "warningRate": config.warning_rate,
        },
        "totalNodes": total,
        "entityCounts": entity_counts,
        "relationCounts": relation_counts,
        "diagnosticCounts": diag_counts,
    }

    ledger_path = out / "ledger.json"
    ledger_path.write_text(json.dumps(ledger, indent=2) + "\n", encoding="utf-8")
    diagnostics_path = out / "diagnostics.ndjson"
    diagnostics_path.write_text(
        "".join(json.dumps(record) + "\n" for record in diagnostics), encoding="utf-8"
    )
    return SynthResult(
        root=out, ledger_path=ledger_path, diagnostics_path=diagnostics_path, ledger=ledger
    )


def _render_module(module: _Module, rel_path: str, roll_diagnostics) -> list[str]:
    lines: list[str] = []

    def emit(text: str = "") -> int:
        lines.append(text)
        return len(lines)

    if module.doc:
        emit(f'"""{module.doc}"""')
    needs = {
        "Callable": bool(module.delegates),
        "ClassVar": any(
            m.flavor == "classvar" for t in module.types for m in t.members
        ),
        "NamedTuple": any(t.type_kind == "struct" for t in module.types),
        "Protocol": any(t.type_kind == "interface" for t in module.types),
    }
    typing_names = sorted(name for name, needed in needs.items() if needed)
    if typing_names:
        emit(f"from typing import {', '.join(typing_names)}")
    if any(t.type_kind == "enum" for t in module.types):
        emit("from enum import Enum")
    for source_module, symbol in sorted(module.imports):
        emit(f"from {source_module} import {symbol}")
    first_line = emit("")
    if first_line >= 1:
        roll_diagnostics(rel_path, 1, f"module {module.name}")

    for name in module.constants:
        line = emit(f"{name} = {len(name)}")
        roll_diagnostics(rel_path, line, f"constant {name}")
    for name in module.delegates:
        line = emit(f"{name} = Callable[[int], str]")
        roll_diagnostics(rel_path, line, f"delegate {name}")

    for planned in module.types:
        emit("")
        emit("")
        header = {
            "class": f"class {planned.name}:",
            "struct": f"class {planned.name}(NamedTuple):",
            "enum": f"class {planned.name}(Enum):",
            "interface": f"class {planned.name}(Protocol):",
        }[planned.type_kind]
        if planned.base is not None:
            header = f"class {planned.name}({planned.base[1]}):"
        line = emit(header)
        roll_diagnostics(rel_path, line, f"type {planned.name}")
        if planned.doc:
            emit(f'    """{planned.doc}"""')
        if not planned.members:
            emit("    pass")
        for i, member in enumerate(planned.members):
            if member.flavor in ("method", "staticmethod", "ctor", "property", "stub"):
                emit("")
            line = _render_member(member, emit)
            roll_diagnostics(rel_path, line, f"member {planned.name}.{member.name}")

    for function in module.functions:
        emit("")
        emit("")
        annotation = f": {function.type_ref[1]}" if function.type_ref else ""
        returns = f" -> {function.return_ref[1]}" if function.return_ref else ""
        arg = f"value{annotation}" if annotation else "value"
        line = emit(f"def {function.name}({arg}){returns}:")
        roll_diagnostics(rel_path, line, f"function {function.name}")
        if function.doc:
            emit(f'    """{function.doc}"""')
        if function.return_ref:
            emit(f"    return {function.return_ref[1]}()")
        else:
            emit("    return value")
    return lines


def _render_member(member: _Member, emit) -> int:
    """Emit one member; returns the line number of its definition."""
    if member.flavor == "enum-value":
        value = sum(ord(c) for c in member.name) % 97 + 1
        return emit(f"    {member.name} = {value}")
    if member.flavor == "field":
        if member.type_ref is not None:
            return emit(f"    {member.name}: {member.type_ref[1]} = None")
        return emit(f"    {member.name}: int = 0")
    if member.flavor == "classvar":
        return emit(f"    {member.name}: ClassVar[int] = 0")
    if member.flavor == "ctor":
        line = emit("    def __init__(self):")
        emit("        self.ready = True")
        return line
    if member.flavor == "stub":
        line = emit(f"    def {member.name}(self) -> None:")
        emit("        ...")
        return line
    if member.flavor == "staticmethod":
        emit("    @staticmethod")
        line = emit(f"    def {member.name}() -> int:")
        if member.doc:
            emit(f'        """{member.doc}"""')
        emit("        return 0")
        return line
    if member.flavor == "property":
        emit("    @property")
        annotation = f" -> {member.type_ref[1]}" if member.type_ref else " -> int"
        line = emit(f"    def {member.name}(self){annotation}:")
        if member.doc:
            emit(f'        """{member.doc}"""')
        emit("        return 0" if not member.type_ref else "        return None")
        return line
    # Ordinary instance method.
    annotation = f": {member.type_ref[1]}" if member.type_ref else ""
    returns = f" -> {member.return_ref[1]}" if member.return_ref else " -> int"
    arg = f", value{annotation}" if annotation else ""
    line = emit(f"    def {member.name}(self{arg}){returns}:")
    if member.doc:
        emit(f'        """{member.doc}"""')
    if member.return_ref:
        emit(f"        return {member.return_ref[1]}()")
    else:
        emit("        return 0")
    return line
