#!/usr/bin/env python3
"""Regenerate the frontend conformance fixtures under frontend/fixtures/.

The diagram app re-implements view transitions, filtering, glyph encoding,
and layout in TypeScript; these fixtures pin its behavior to the primary
implementation bit-for-bit (exact sets, exact error positions, exact floats).
"""

from __future__ import annotations

import json
import random
import struct
import sys
import tempfile
from pathlib import Path

from codecarta.detmath import det_cos, det_sin, hash32, unit_interval
from codecarta.errors import ExprNameError, ExprSyntaxError, ExprTypeError
from codecarta.filters import (
    MatchAction,
    Query,
    QueryMode,
    apply,
    compile_query,
    evaluate,
)
from codecarta.glyphs import GlyphConfig, StyleConfig, glyph_for, style_config_document
from codecarta.layout import LayoutConfig, run_layout
from codecarta.miner import MinerConfig, mine
from codecarta.model import (
    Accessibility,
    Diagnostic,
    Entity,
    EntityGraph,
    EntityKind,
    GraphBuilder,
    MethodKind,
    RelationId,
    Severity,
    TypeKind,
)
from codecarta.serialize import serialize
from codecarta.synth import SynthConfig, synthesize
from codecarta.tokens import Token, render_token
from codecarta.view import ViewSession, ViewState, visible_set

FIXTURES = Path(__file__).resolve().parents[1] / "frontend" / "fixtures"


def tokens_json(tokens) -> list[str]:
    return sorted(render_token(t) for t in tokens)


def view_json(vs: ViewState) -> dict:
    return {
        "expanded": tokens_json(vs.expanded),
        "removed": tokens_json(vs.removed),
        "highlighted": None if vs.highlighted is None else tokens_json(vs.highlighted),
        "enabledKinds": sorted(k.value for k in vs.enabled_kinds),
        "enabledRelations": sorted(r.value for r in vs.enabled_relations),
    }


def graph_json(g: EntityGraph) -> dict:
    return json.loads(serialize(g).decode("utf-8"))


def synth_graph(tmp: Path, *, projects=3, nodes=130, seed=21) -> EntityGraph:
    root = tmp / f"fixture-{seed}"
    result = synthesize(
        SynthConfig(projects=projects, target_nodes=nodes, seed=seed,
                    error_rate=0.04, warning_rate=0.08),
        root,
    )
    return mine(MinerConfig(root_path=root, diagnostics_file=result.diagnostics_path))


def gen_view_ops(g: EntityGraph) -> dict:
    scenarios = []
    rng = random.Random(99)
    for index in range(8):
        session = ViewSession(g)
        steps = [
            {
                "op": "init",
                "expectVisible": tokens_json(session.visible),
            }
        ]
        for _ in range(14):
            visible = sorted(session.visible)
            if not visible:
                break
            roll = rng.random()
            if roll < 0.45:
                target = rng.choice(visible)
                expanding = target not in session.state.expanded
                session.toggle_expand(target)
                steps.append(
                    {
                        "op": "expand" if expanding else "collapse",
                        "token": render_token(target),
                        "expectVisible": tokens_json(session.visible),
                    }
                )
            elif roll < 0.62:
                target = rng.choice(visible)
                session.remove(target)
                steps.append(
                    {
                        "op": "remove",
                        "token": render_token(target),
                        "expectVisible": tokens_json(session.visible),
                    }
                )
            elif roll < 0.72:
                session.refresh()
                steps.append(
                    {"op": "refresh", "expectVisible": tokens_json(session.visible)}
                )
            elif roll < 0.86:
                query = rng.choice(
                    [
                        Query(QueryMode.FULL_TEXT, "widget"),
                        Query(QueryMode.REGEX, "^Widget[0-9]"),
                        Query(QueryMode.EXPRESSION, 'kind == "type" && memberCount > 1'),
                        Query(QueryMode.EXPRESSION, "hasWarnings || hasErrors"),
                    ]
                )
                predicate = compile_query(query)
                matches = evaluate(predicate, g, session.visible)
                session.set_state(
                    apply(g, matches, MatchAction.ISOLATE, session.state)
                )
                steps.append(
                    {
                        "op": "isolate",
                        "query": {"mode": query.mode.value, "source": query.source},
                        "expectMatches": tokens_json(matches),
                        "expectVisible": tokens_json(session.visible),
                    }
                )
            else:
                query = Query(QueryMode.FULL_TEXT, rng.choice(["mod", "func", "prop"]))
                predicate = compile_query(query)
                matches = evaluate(predicate, g, session.visible)
                session.set_state(
                    apply(g, matches, MatchAction.HIGHLIGHT, session.state)
                )
                steps.append(
                    {
                        "op": "highlight",
                        "query": {"mode": query.mode.value, "source": query.source},
                        "expectMatches": tokens_json(matches),
                        "expectHighlighted": tokens_json(session.state.highlighted),
                        "expectVisible": tokens_json(session.visible),
                    }
                )
        scenarios.append({"name": f"scenario-{index}", "steps": steps})
    return {"graph": graph_json(g), "scenarios": scenarios}


_SAFE_REGEXES = ["^Widget", "mod_[0-9]+$", "[0-9]{2}", "^(proj|mod)", "e.e", "prop|func"]


def gen_filter_cases(g: EntityGraph) -> dict:
    rng = random.Random(5)
    scope = tokens_json(g.entities)
    cases = []
    for needle in ["widget", "FUNC", "prop", "zz", "mod_0"]:
        predicate = compile_query(Query(QueryMode.FULL_TEXT, needle))
        cases.append(
            {
                "mode": "full-text",
                "source": needle,
                "expect": tokens_json(evaluate(predicate, g, g.entities)),
            }
        )
    for pattern in _SAFE_REGEXES:
        predicate = compile_query(Query(QueryMode.REGEX, pattern))
        cases.append(
            {
                "mode": "regex",
                "source": pattern,
                "expect": tokens_json(evaluate(predicate, g, g.entities)),
            }
        )
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
    from conftest import random_expression

    for seed in range(40):
        source, _, _ = random_expression(random.Random(seed))
        predicate = compile_query(Query(QueryMode.EXPRESSION, source))
        cases.append(
            {
                "mode": "expression",
                "source": source,
                "expect": tokens_json(evaluate(predicate, g, g.entities)),
            }
        )
    for source in [
        'kind == "type" && isStatic && memberCount > 2',
        "hasErrors || hasWarnings",
        'docContains("synthetic")',
        'matches(name, "^Widget[0-9]+$")',
        'contains(name, "FUNC")',
        'accessibility == "private" || accessibility == "internal"',
        "instanceMemberCount >= 2 && staticMemberCount == 0",
        '!(kind == "namespace") && hasDoc',
    ]:
        predicate = compile_query(Query(QueryMode.EXPRESSION, source))
        cases.append(
            {
                "mode": "expression",
                "source": source,
                "expect": tokens_json(evaluate(predicate, g, g.entities)),
            }
        )

    errors = []
    for source, kind in [
        ("kind ==", "syntax"),
        ("(kind", "syntax"),
        ('kind == "a" &&', "syntax"),
        ("!", "syntax"),
        ("kind @ 3", "syntax"),
        ('kind == "a" "b"', "syntax"),
        ("isStatic > 3", "type"),
        ('kind == 3', "type"),
        ("name && isStatic", "type"),
        ("docContains(3)", "type"),
        ("name", "type"),
        ("sizeish > 3", "name"),
        ("frob(name)", "name"),
    ]:
        try:
            compile_query(Query(QueryMode.EXPRESSION, source))
            raise AssertionError(f"expected failure: {source}")
        except (ExprSyntaxError, ExprTypeError, ExprNameError) as exc:
            kind_map = {
                ExprSyntaxError: "syntax",
                ExprTypeError: "type",
                ExprNameError: "name",
            }
            assert kind_map[type(exc)] == kind, source
            errors.append({"source": source, "kind": kind, "position": exc.position})
    return {"graph": graph_json(g), "cases": cases, "errors": errors}


def gen_glyph_table() -> dict:
    cfg = GlyphConfig()
    member_kinds = {EntityKind.FIELD, EntityKind.METHOD, EntityKind.PROPERTY, EntityKind.EVENT}
    severity_sets = [
        (),
        (Severity.HINT,),
        (Severity.WARNING,),
        (Severity.ERROR,),
        (Severity.WARNING, Severity.ERROR, Severity.HINT),
    ]
    rows = []
    for kind in EntityKind:
        type_kinds = list(TypeKind) if kind == EntityKind.TYPE else [None]
        method_kinds = list(MethodKind) if kind == EntityKind.METHOD else [None]
        accessibilities = (
            list(Accessibility) if kind == EntityKind.TYPE or kind in member_kinds else [None]
        )
        counts = [(0, 0), (3, 0), (0, 4), (2, 7)] if kind == EntityKind.TYPE else [(0, 0)]
        for type_kind in type_kinds:
            for method_kind in method_kinds:
                for accessibility in accessibilities:
                    for is_static in (False, True):
                        for severities in severity_sets:
                            for instance, static in counts:
                                if (
                                    kind == EntityKind.TYPE
                                    and is_static
                                    and type_kind == TypeKind.CLASS
                                    and instance > 0
                                ):
                                    continue
                                entity = Entity(
                                    token=Token((0,)),
                                    name="probe",
                                    kind=kind,
                                    type_kind=type_kind,
                                    method_kind=method_kind,
                                    accessibility=accessibility,
                                    is_static=is_static,
                                    diagnostics=tuple(
                                        Diagnostic(s, f"D{i}", "x")
                                        for i, s in enumerate(severities)
                                    ),
                                    instance_member_count=instance,
                                    static_member_count=static,
                                )
                                spec = glyph_for(entity, cfg)
                                rows.append(
                                    {
                                        "entity": {
                                            "kind": kind.value,
                                            "typeKind": type_kind.value if type_kind else None,
                                            "methodKind": method_kind.value if method_kind else None,
                                            "accessibility": accessibility.value
                                            if accessibility
                                            else None,
                                            "isStatic": is_static,
                                            "severities": [s.value for s in severities],
                                            "instanceMemberCount": instance,
                                            "staticMemberCount": static,
                                        },
                                        "expect": _glyph_json(spec),
                                    }
                                )
    return {"rows": rows}


def _glyph_json(spec) -> dict:
    return {
        "iconId": spec.icon_id,
        "tint": spec.tint,
        "cornerIconId": spec.corner_icon_id,
        "innerOutline": _outline_json(spec.inner_outline),
        "middleOutline": _outline_json(spec.middle_outline),
        "outerOutline": _outline_json(spec.outer_outline),
        "radius": spec.radius,
        "effect": spec.effect.value,
    }


def _outline_json(outline) -> dict:
    return {"style": outline.style, "width": outline.width, "saturation": outline.saturation}


def fig1_graph() -> tuple[EntityGraph, ViewState, StyleConfig]:
    b = GraphBuilder()
    s = b.add(None, EntityKind.SOLUTION, "sample")
    p = b.add(s, EntityKind.PROJECT, "geometry")
    ns = b.add(p, EntityKind.NAMESPACE, "geometry.shapes")
    shape = b.add(ns, EntityKind.TYPE, "Shape", type_kind=TypeKind.CLASS,
                  accessibility=Accessibility.PUBLIC)
    square = b.add(ns, EntityKind.TYPE, "Square", type_kind=TypeKind.CLASS,
                   accessibility=Accessibility.PUBLIC)
    circle = b.add(ns, EntityKind.TYPE, "Circle", type_kind=TypeKind.CLASS,
                   accessibility=Accessibility.PRIVATE)
    sizable = b.add(ns, EntityKind.TYPE, "Sizable", type_kind=TypeKind.INTERFACE,
                    accessibility=Accessibility.PUBLIC)
    maker = b.add(ns, EntityKind.TYPE, "Maker", type_kind=TypeKind.CLASS,
                  accessibility=Accessibility.INTERNAL, is_static=True)
    area = b.add(shape, EntityKind.METHOD, "area", method_kind=MethodKind.ORDINARY,
                 accessibility=Accessibility.PUBLIC,
                 diagnostics=(Diagnostic(Severity.WARNING, "W7", "slow"),))
    side = b.add(square, EntityKind.FIELD, "side", accessibility=Accessibility.PRIVATE)
    make = b.add(maker, EntityKind.METHOD, "make", method_kind=MethodKind.ORDINARY,
                 accessibility=Accessibility.PUBLIC, is_static=True,
                 diagnostics=(Diagnostic(Severity.ERROR, "E1", "broken"),))
    b.relate(RelationId.INHERITS_FROM, square, shape)
    b.relate(RelationId.INHERITS_FROM, circle, shape)
    b.relate(RelationId.INHERITS_FROM, square, sizable)
    b.relate(RelationId.RETURNS, make, shape)
    b.relate(RelationId.RETURNS, area, square)
    g = b.build()
    vs = ViewState(
        expanded=frozenset(g.entities),
        enabled_kinds=frozenset(EntityKind),
        enabled_relations=frozenset(
            {RelationId.DECLARES, RelationId.INHERITS_FROM, RelationId.RETURNS}
        ),
    )
    style = StyleConfig(
        relation_overrides={
            "inheritsFrom": {"enabled": True},
            "returns": {"enabled": True},
        }
    )
    return g, vs, style


def build_scene(g, vs, positions, style: StyleConfig) -> dict:
    """Golden scene graph: what the renderer must draw, minus pixels."""
    visible = visible_set(g, vs)
    highlighted = vs.highlighted
    nodes = []
    for token in sorted(visible):
        entity = g.entities[token]
        x, y = positions[token]
        nodes.append(
            {
                "token": render_token(token),
                "x": x,
                "y": y,
                "grayed": highlighted is not None and token not in highlighted,
                "glyph": _glyph_json(glyph_for(entity, style.glyphs)),
            }
        )
    edges = []
    styles = style.edge_styles()
    for relation in RelationId:
        edge_style = styles[relation]
        if relation not in vs.enabled_relations or not edge_style.enabled:
            continue
        for src, dst in sorted(g.edges(relation)):
            if src in visible and dst in visible and src != dst:
                edges.append(
                    {
                        "relation": relation.value,
                        "source": render_token(src),
                        "target": render_token(dst),
                        "color": edge_style.color,
                        "lineWeight": edge_style.line_weight,
                    }
                )
    return {"nodes": nodes, "edges": edges}


def gen_scene() -> dict:
    g, vs, style = fig1_graph()
    state = run_layout(g, vs, LayoutConfig(max_iterations=60, convergence_threshold=0.0), seed=4)
    positions = state.positions
    return {
        "graph": graph_json(g),
        "view": view_json(vs),
        "style": style_config_document(style),
        "positions": {render_token(t): [x, y] for t, (x, y) in sorted(positions.items())},
        "expectScene": build_scene(g, vs, positions, style),
    }


def gen_layout_fixture(tmp: Path) -> dict:
    g = synth_graph(tmp, projects=2, nodes=200, seed=42)
    vs = ViewState(
        expanded=frozenset(g.entities),
        enabled_kinds=frozenset(EntityKind),
        enabled_relations=frozenset({RelationId.DECLARES, RelationId.DEPENDS_ON}),
    )
    cfg = LayoutConfig(max_iterations=400)
    state = run_layout(g, vs, cfg, seed=9)
    return {
        "graph": graph_json(g),
        "view": view_json(vs),
        "config": {
            "ringSpacing": cfg.ring_spacing,
            "minAngularGap": cfg.min_angular_gap_deg,
            "forces": {
                "repulsionStrength": cfg.forces.repulsion_strength,
                "gravity": cfg.forces.gravity,
                "edgeWeightInfluence": cfg.forces.edge_weight_influence,
                "adjustSizes": cfg.forces.adjust_sizes,
                "thetaApprox": cfg.forces.theta_approx,
            },
            "maxIterations": cfg.max_iterations,
            "convergenceThreshold": cfg.convergence_threshold,
        },
        "seed": 9,
        "snapshot": {
            "positions": {
                render_token(t): [x, y] for t, (x, y) in sorted(state.positions.items())
            },
            "iteration": state.iteration,
            "converged": state.converged,
        },
    }


def gen_detmath_cases() -> dict:
    def bits(x: float) -> str:
        return struct.pack(">d", x).hex()

    trig = []
    for k in range(200):
        x = k * 0.173 - 12.0
        trig.append(
            {"x": bits(x), "sin": bits(det_sin(x)), "cos": bits(det_cos(x))}
        )
    hashes = [
        {"values": values, "hash": hash32(*values), "unit": bits(unit_interval(hash32(*values)))}
        for values in [[0], [7], [1, 2, 3], [7, 0, 4, 9], [123456789, 42]]
    ]
    return {"trig": trig, "hash": hashes}


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory(prefix="codecarta-fixtures-") as tmp_text:
        tmp = Path(tmp_text)
        g = synth_graph(tmp)
        outputs = {
            "view-ops.json": gen_view_ops(g),
            "filter-cases.json": gen_filter_cases(g),
            "glyph-table.json": gen_glyph_table(),
            "scene-fig1.json": gen_scene(),
            "layout-200.json": gen_layout_fixture(tmp),
            "detmath-cases.json": gen_detmath_cases(),
        }
    for name, payload in outputs.items():
        path = FIXTURES / name
        path.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
        print(f"wrote {path} ({path.stat().st_size // 1024} KiB)")


if __name__ == "__main__":
    main()
