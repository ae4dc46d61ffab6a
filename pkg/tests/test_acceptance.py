"""Acceptance suite: one test per acceptance criterion, at stated tolerances.

Each test prints a PASS/FAIL line for its criterion (run with `pytest -v -s`
to watch them); any failure also fails the test the normal way.
"""

import json
import math
import random
import re
import time
from contextlib import contextmanager

import numpy as np
import pytest

from codecarta.cli import main
from codecarta.filters import (
    MatchAction,
    Query,
    QueryMode,
    apply,
    compile_query,
    evaluate,
)
from codecarta.glyphs import Effect, GlyphConfig, glyph_for, node_radius
from codecarta.layout import (
    LayoutConfig,
    ForceConfig,
    build_layout_graph,
    init_state,
    run_layout,
    seed_positions,
    force_step,
)
from codecarta.miner import MinerConfig, mine
from codecarta.model import (
    Accessibility,
    Diagnostic,
    Entity,
    EntityKind,
    MethodKind,
    RelationId,
    Severity,
    TypeKind,
    member_counts,
)
from codecarta.serialize import deserialize, serialize
from codecarta.synth import SynthConfig, synthesize
from codecarta.tidytree import subtree_angular_interval, tidy_tree_detail
from codecarta.tokens import (
    Token,
    assign_tokens,
    is_ancestor,
    parse_token,
    render_token,
)
from codecarta.view import ViewSession, ViewState, visible_set

from conftest import (
    make_random_forest,
    make_random_graph,
    random_expression,
    shuffled_copy,
)


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"FAIL: {name}")
        raise
    print(f"PASS: {name}")


@pytest.fixture(scope="session")
def scale_fixture(tmp_path_factory):
    root = tmp_path_factory.mktemp("synth-scale") / "fixture"
    synthesize(
        SynthConfig(
            projects=8, target_nodes=3760, seed=7, error_rate=0.01, warning_rate=0.02
        ),
        root,
    )
    return root


def test_determinism_suite(scale_fixture, tmp_path):
    with criterion("determinism: double pipeline + thread counts byte-identical, < 2 min"):
        started = time.monotonic()
        outputs = []
        for name in ("first", "second"):
            site = tmp_path / name
            code = main(
                [
                    "pipeline",
                    str(scale_fixture),
                    "--out",
                    str(site),
                    "--diagnostics",
                    str(scale_fixture / "diagnostics.ndjson"),
                    "--seed",
                    "7",
                    "--single-file",
                ]
            )
            assert code == 0
            outputs.append(
                {
                    f: (site / f).read_bytes()
                    for f in ("graph.json", "layout.json", "index.html")
                }
            )
        assert outputs[0]["graph.json"] == outputs[1]["graph.json"]
        assert outputs[0]["layout.json"] == outputs[1]["layout.json"]
        assert outputs[0]["index.html"] == outputs[1]["index.html"]

        for threads in ("1", "8"):
            code = main(
                [
                    "mine",
                    str(scale_fixture),
                    "--out",
                    str(tmp_path / f"graph-t{threads}.json"),
                    "--threads",
                    threads,
                ]
            )
            assert code == 0
        assert (tmp_path / "graph-t1.json").read_bytes() == (
            tmp_path / "graph-t8.json"
        ).read_bytes()

        elapsed = time.monotonic() - started
        assert elapsed < 120, f"determinism suite took {elapsed:.1f}s"


def test_scale_target(scale_fixture, tmp_path):
    with criterion("scale: 3760 nodes mined+laid out+bundled < 60 s, < 15 MB, self-contained"):
        started = time.monotonic()
        site = tmp_path / "site"
        code = main(
            [
                "pipeline",
                str(scale_fixture),
                "--out",
                str(site),
                "--diagnostics",
                str(scale_fixture / "diagnostics.ndjson"),
                "--seed",
                "7",
                "--single-file",
            ]
        )
        elapsed = time.monotonic() - started
        assert code == 0
        assert elapsed < 60, f"pipeline took {elapsed:.1f}s"

        graph = deserialize((site / "graph.json").read_bytes())
        assert len(graph.entities) == 3760

        layout_doc = json.loads((site / "layout.json").read_text())
        assert layout_doc["converged"] is True

        page = (site / "index.html").read_bytes()
        assert len(page) < 15 * 1024 * 1024
        assert not re.search(rb"https?://", page)
        assert not re.search(rb'(src|href)="/', page)
        assert not re.search(rb"(src|href)='/", page)


def test_token_properties():
    with criterion("tokens: 10^4 forests bijective, order-free, oracle-aligned, round-trip"):
        rng = random.Random(1234)
        for case in range(10_000):
            forest_rng = random.Random(case)
            roots = make_random_forest(forest_rng, max_nodes=10)
            tokens = assign_tokens(roots)
            values = list(tokens.values())
            assert len(set(values)) == len(values)  # bijective
            assert assign_tokens(shuffled_copy(roots, forest_rng)) == tokens

            sample = values[:4]
            for a in sample:
                for b in sample:
                    oracle = a != b and (render_token(b) + ".").startswith(
                        render_token(a) + "."
                    )
                    assert is_ancestor(a, b) == oracle
            for token in values:
                assert parse_token(render_token(token)) == token
        for _ in range(10_000):
            token = Token(tuple(rng.randint(0, 10**6) for _ in range(rng.randint(1, 6))))
            assert parse_token(render_token(token)) == token


def test_serializer_round_trip():
    with criterion("serializer: 10^3 graphs round-trip, canonical form stable"):
        for seed in range(1_000):
            rng = random.Random(seed)
            g = make_random_graph(rng, size=rng.randint(5, 45), with_diagnostics=True)
            document = serialize(g)
            restored = deserialize(document)
            assert restored == g
            assert serialize(restored) == document


def test_tidy_tree_structure():
    with criterion("tidy tree: 10^3 trees disjoint intervals, parent span, exact rings"):
        for seed in range(1_000):
            rng = random.Random(seed)
            size = min(2000, int(2 ** rng.uniform(1, 11)))
            root = Token((0,))
            nodes = [root]
            children: dict[Token, list[Token]] = {}
            counters: dict[Token, int] = {}
            for _ in range(size - 1):
                parent = rng.choice(nodes)
                ordinal = counters.get(parent, 0)
                counters[parent] = ordinal + 1
                child = parent.child(ordinal)
                children.setdefault(parent, []).append(child)
                nodes.append(child)

            positions, angles, ordered = tidy_tree_detail([root], children, 60.0)

            depth = {root: 0}
            stack = [root]
            while stack:
                node = stack.pop()
                for kid in children.get(node, ()):
                    depth[kid] = depth[node] + 1
                    stack.append(kid)
            for node in nodes:
                x, y = positions[node]
                assert math.hypot(x, y) == pytest.approx(depth[node] * 60.0, abs=1e-6)

            for node in nodes:
                kids = ordered.get(node, [])
                if len(kids) >= 1:
                    intervals = sorted(
                        subtree_angular_interval(k, ordered, angles) for k in kids
                    )
                    for (lo1, hi1), (lo2, hi2) in zip(intervals, intervals[1:]):
                        assert hi1 < lo2
                    lo = min(i[0] for i in intervals)
                    hi = max(i[1] for i in intervals)
                    assert lo - 1e-12 <= angles[node] <= hi + 1e-12


def test_force_model():
    from scipy.optimize import brentq
    from codecarta.model import GraphBuilder

    with criterion("force model: equilibrium within 2%, pinned immobile, swing decays"):
        # Two-node equilibrium against the scalar root-finding oracle.
        b = GraphBuilder()
        s = b.add(None, EntityKind.SOLUTION, "s")
        b.add(s, EntityKind.PROJECT, "p")
        g2 = b.build()
        vs2 = ViewState(expanded=frozenset(g2.entities), enabled_kinds=frozenset(EntityKind))
        state = run_layout(
            g2, vs2, LayoutConfig(max_iterations=5000, convergence_threshold=1e-6), seed=3
        )
        pos = state.positions
        d = math.dist(pos[Token((0,))], pos[Token((0, 0))])
        kr, grav, m = 2.0, 0.05, 2.0
        d_star = brentq(lambda r: kr * m * m / r - r - grav * m, 1e-6, 1e3)
        assert abs(d - d_star) / d_star < 0.02

        # Pinned-node immobility under 10^3 random configurations.
        for seed in range(1_000):
            rng = random.Random(seed)
            g = make_random_graph(rng, size=rng.randint(6, 16), packages=False)
            vs = ViewState(expanded=frozenset(g.entities), enabled_kinds=frozenset(EntityKind))
            tokens = sorted(visible_set(g, vs))
            pinned = frozenset(rng.sample(tokens, k=rng.randint(1, len(tokens))))
            cfg = LayoutConfig(
                max_iterations=rng.randint(1, 8),
                convergence_threshold=0.0,
                forces=ForceConfig(
                    repulsion_strength=rng.uniform(0.5, 8),
                    gravity=rng.uniform(0.0, 0.8),
                    adjust_sizes=rng.random() < 0.25,
                    theta_approx=rng.uniform(0.0, 1.2),
                ),
            )
            result = run_layout(g, vs, cfg, seed=seed, pinned=pinned)
            reference = init_state(
                build_layout_graph(g, vs), seed_positions(g, vs, cfg, seed), cfg, seed
            )
            index = {t: i for i, t in enumerate(result.tokens)}
            for token in pinned:
                np.testing.assert_array_equal(
                    result.pos[index[token]], reference.pos[index[token]]
                )

        # Swing decay over 50-iteration windows on the fixture set.
        window_pairs = 0
        non_increasing = 0
        for fixture_seed, size in ((101, 100), (202, 200), (303, 400)):
            g = make_random_graph(random.Random(fixture_seed), size=size)
            vs = ViewState(expanded=frozenset(g.entities), enabled_kinds=frozenset(EntityKind))
            cfg = LayoutConfig(max_iterations=500, convergence_threshold=0.0)
            state = run_layout(g, vs, cfg, seed=fixture_seed)
            swings = [entry["totalSwing"] for entry in state.trace]
            blocks = [sum(swings[i : i + 50]) for i in range(0, 500, 50)]
            for left, right in zip(blocks, blocks[1:]):
                window_pairs += 1
                if right <= left:
                    non_increasing += 1
        assert non_increasing / window_pairs >= 0.9

        # Displacement clamp below the ring spacing.
        g = make_random_graph(random.Random(9), size=60)
        vs = ViewState(expanded=frozenset(g.entities), enabled_kinds=frozenset(EntityKind))
        cfg = LayoutConfig()
        lg = build_layout_graph(g, vs)
        st = init_state(lg, seed_positions(g, vs, cfg, 2), cfg, 2)
        for _ in range(20):
            before = st.pos.copy()
            st = force_step(st, lg)
            assert np.hypot(*(st.pos - before).T).max() < cfg.ring_spacing


def test_filter_oracle_equivalence():
    with criterion("filters: 10^3 cases per mode match brute force; isolate = prefix oracle"):
        g = make_random_graph(random.Random(42), size=250, with_diagnostics=True)
        scope = frozenset(g.entities)
        names = [e.name for e in g.entities.values()]

        # Full-text mode.
        rng = random.Random(7)
        for case in range(1_000):
            base = rng.choice(names)
            lo = rng.randrange(len(base))
            hi = rng.randrange(lo + 1, len(base) + 1)
            needle = base[lo:hi]
            if rng.random() < 0.5:
                needle = needle.upper()
            predicate = compile_query(Query(QueryMode.FULL_TEXT, needle))
            got = evaluate(predicate, g, scope)
            expected = frozenset(
                t for t, e in g.entities.items() if needle.lower() in e.name.lower()
            )
            assert got == expected

        # Regex mode.
        patterns = ["^Type", "member[0-9]+$", "[0-9]{2}", "^(ns|proj)", "e.e", "sol|pkg"]
        for case in range(1_000):
            pattern = patterns[case % len(patterns)]
            predicate = compile_query(Query(QueryMode.REGEX, pattern))
            got = evaluate(predicate, g, scope)
            expected = frozenset(
                t for t, e in g.entities.items() if re.search(pattern, e.name)
            )
            assert got == expected

        # Expression mode against independently constructed semantics.
        entities = list(g.entities.items())
        for case in range(1_000):
            rng_case = random.Random(case)
            source, oracle, _ = random_expression(rng_case)
            predicate = compile_query(Query(QueryMode.EXPRESSION, source))
            sample = entities[(case * 13) % 200 :][:30]
            got = frozenset(t for t, e in sample if predicate(e))
            expected = frozenset(t for t, e in sample if oracle(e))
            assert got == expected, source
            assert not predicate.runtime_errors

        # Isolate ancestor closure vs the token-prefix oracle.
        vs = ViewState(expanded=frozenset(g.entities), enabled_kinds=frozenset(EntityKind))
        visible = visible_set(g, vs)
        rng = random.Random(11)
        for case in range(200):
            matches = frozenset(rng.sample(sorted(visible), k=rng.randint(1, 12)))
            after = apply(g, matches, MatchAction.ISOLATE, vs)
            got = visible_set(g, after)
            expected = set(matches)
            for t in matches:
                expected.update(a for a in visible if is_ancestor(a, t))
            assert got == frozenset(expected)


def test_view_model_oracle():
    with criterion("view model: 10^3 op sequences incremental == from scratch; default view"):
        for seed in range(1_000):
            rng = random.Random(seed)
            g = make_random_graph(rng, size=40)
            expected_default = frozenset(
                t
                for t, e in g.entities.items()
                if e.kind in (EntityKind.SOLUTION, EntityKind.PROJECT)
            )
            session = ViewSession(g)
            assert session.visible == expected_default
            for _ in range(12):
                visible = sorted(session.visible)
                if not visible:
                    break
                roll = rng.random()
                if roll < 0.5:
                    session.toggle_expand(rng.choice(visible))
                elif roll < 0.75:
                    session.remove(rng.choice(visible))
                elif roll < 0.85:
                    session.refresh()
                else:
                    matches = frozenset(rng.sample(visible, k=min(3, len(visible))))
                    session.set_state(
                        apply(g, matches, MatchAction.ISOLATE, session.state)
                    )
                assert session.visible == visible_set(g, session.state), seed


def _glyph_entity(kind, type_kind, method_kind, accessibility, is_static, severities, counts):
    instance, static = counts
    diags = tuple(
        Diagnostic(severity, f"D{i}", "probe") for i, severity in enumerate(severities)
    )
    return Entity(
        token=Token((0, 0)),
        name="probe",
        kind=kind,
        type_kind=type_kind,
        method_kind=method_kind,
        accessibility=accessibility,
        is_static=is_static,
        doc_comment=None,
        diagnostics=diags,
        instance_member_count=instance,
        static_member_count=static,
    )


def test_glyph_table():
    with criterion("glyphs: exhaustive kind x accessibility x static x severity table"):
        cfg = GlyphConfig()
        severity_sets = [
            (),
            (Severity.HINT,),
            (Severity.WARNING,),
            (Severity.ERROR,),
            (Severity.WARNING, Severity.ERROR, Severity.HINT),
        ]
        member_kinds = {
            EntityKind.FIELD,
            EntityKind.METHOD,
            EntityKind.PROPERTY,
            EntityKind.EVENT,
        }
        type_radius_floor = min(
            node_radius(
                _glyph_entity(EntityKind.TYPE, tk, None, Accessibility.PUBLIC, False, (), (0, 0)),
                cfg,
            )
            for tk in TypeKind
        )

        checked = 0
        for kind in EntityKind:
            type_kinds = list(TypeKind) if kind == EntityKind.TYPE else [None]
            method_kinds = list(MethodKind) if kind == EntityKind.METHOD else [None]
            if kind == EntityKind.TYPE or kind in member_kinds:
                accessibilities = list(Accessibility)
            else:
                accessibilities = [None]
            if kind == EntityKind.TYPE:
                count_options = [(0, 0), (3, 0), (0, 4), (2, 7)]
            else:
                count_options = [(0, 0)]
            for type_kind in type_kinds:
                for method_kind in method_kinds:
                    for accessibility in accessibilities:
                        for is_static in (False, True):
                            for severities in severity_sets:
                                for counts in count_options:
                                    if (
                                        kind == EntityKind.TYPE
                                        and is_static
                                        and type_kind == TypeKind.CLASS
                                        and counts[0] > 0
                                    ):
                                        continue  # static classes: no instance members
                                    e = _glyph_entity(
                                        kind, type_kind, method_kind, accessibility,
                                        is_static, severities, counts,
                                    )
                                    spec = glyph_for(e, cfg)
                                    checked += 1

                                    assert (spec.inner_outline.style == "dashed") == is_static
                                    if kind == EntityKind.TYPE:
                                        assert (spec.middle_outline.width == 0) == (counts[0] == 0)
                                        assert (spec.outer_outline.width == 0) == (counts[1] == 0)
                                    else:
                                        assert spec.middle_outline.width == 0
                                        assert spec.outer_outline.width == 0
                                    assert spec.middle_outline.style == "solid"
                                    assert spec.outer_outline.style == "dashed"
                                    assert (
                                        spec.inner_outline.saturation
                                        > spec.middle_outline.saturation
                                        > spec.outer_outline.saturation
                                    )
                                    assert (spec.corner_icon_id is None) == (
                                        accessibility in (Accessibility.PUBLIC, None)
                                    )
                                    if Severity.ERROR in severities:
                                        assert spec.effect == Effect.FIRE
                                    elif Severity.WARNING in severities:
                                        assert spec.effect == Effect.SMOKE
                                    else:
                                        assert spec.effect == Effect.NONE
                                    assert spec.radius > 0
                                    if kind in member_kinds:
                                        assert spec.radius < type_radius_floor
        assert checked == 1720  # full cross product

        # Paper-anchored cases: static class with only static members (B),
        # non-static private class with instance members (D), warning method (E).
        case_b = glyph_for(
            _glyph_entity(
                EntityKind.TYPE, TypeKind.CLASS, None, Accessibility.PUBLIC, True, (), (0, 6)
            ),
            cfg,
        )
        assert case_b.inner_outline.style == "dashed"
        assert case_b.middle_outline.width == 0
        assert case_b.outer_outline.width > 0
        assert case_b.corner_icon_id is None

        case_d = glyph_for(
            _glyph_entity(
                EntityKind.TYPE, TypeKind.CLASS, None, Accessibility.PRIVATE, False, (), (3, 0)
            ),
            cfg,
        )
        assert case_d.inner_outline.style == "solid"
        assert case_d.middle_outline.width > 0
        assert case_d.outer_outline.width == 0
        assert case_d.corner_icon_id == "lock"

        case_e = glyph_for(
            _glyph_entity(
                EntityKind.METHOD, None, MethodKind.ORDINARY, Accessibility.PUBLIC,
                False, (Severity.WARNING,), (0, 0),
            ),
            cfg,
        )
        assert case_e.effect == Effect.SMOKE


def test_miner_ledger_agreement(tmp_path):
    with criterion("miner: ledger agreement across 10 random seeds"):
        rng = random.Random(2024)
        for _ in range(10):
            seed = rng.randrange(10_000)
            root = tmp_path / f"seed{seed}"
            result = synthesize(
                SynthConfig(
                    projects=rng.randint(1, 4),
                    target_nodes=rng.randint(60, 200),
                    seed=seed,
                    error_rate=0.03,
                    warning_rate=0.06,
                ),
                root,
            )
            g = mine(MinerConfig(root_path=root, diagnostics_file=result.diagnostics_path))
            ledger = result.ledger
            assert len(g.entities) == ledger["totalNodes"]
            kind_counts: dict[str, int] = {}
            for entity in g.entities.values():
                kind_counts[entity.kind.value] = kind_counts.get(entity.kind.value, 0) + 1
            assert {k: v for k, v in ledger["entityCounts"].items() if v} == {
                k: v for k, v in kind_counts.items() if v
            }
            for relation, expected in ledger["relationCounts"].items():
                assert len(g.edges(RelationId(relation))) == expected, relation
            severities = {"error": 0, "warning": 0, "hint": 0}
            for entity in g.entities.values():
                for diag in entity.diagnostics:
                    severities[diag.severity.value] += 1
            assert severities == ledger["diagnosticCounts"]
            for token, entity in g.entities.items():
                if entity.kind == EntityKind.TYPE:
                    assert member_counts(g, token) == (
                        entity.instance_member_count,
                        entity.static_member_count,
                    )
