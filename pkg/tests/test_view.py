import random

import pytest

from codecarta.errors import StateError
from codecarta.filters import MatchAction, Query, QueryMode, apply, compile_query, evaluate
from codecarta.model import EntityKind, GraphBuilder, RelationId
from codecarta.tokens import Token
from codecarta.view import (
    ViewSession,
    ViewState,
    default_view,
    refresh,
    remove,
    toggle_expand,
    visible_set,
)

from conftest import make_random_graph


def kafe_shaped_graph():
    """1 solution, 8 projects, with some namespaces/types below."""
    b = GraphBuilder()
    s = b.add(None, EntityKind.SOLUTION, "kafe")
    for i in range(8):
        p = b.add(s, EntityKind.PROJECT, f"proj{i}")
        for j in range(2):
            b.add(p, EntityKind.NAMESPACE, f"ns{i}_{j}")
    return b.build()


def test_default_view_shows_solution_and_projects_only():
    g = kafe_shaped_graph()
    vs = default_view(g)
    visible = visible_set(g, vs)
    assert len(visible) == 9
    kinds = {g.entities[t].kind for t in visible}
    assert kinds == {EntityKind.SOLUTION, EntityKind.PROJECT}


def test_default_view_bare_solution():
    b = GraphBuilder()
    b.add(None, EntityKind.SOLUTION, "s")
    g = b.build()
    assert visible_set(g, default_view(g)) == frozenset({Token((0,))})


def test_default_view_never_shows_types_or_members():
    for seed in range(20):
        g = make_random_graph(random.Random(seed), size=60)
        visible = visible_set(g, default_view(g))
        assert visible == frozenset(
            t
            for t, e in g.entities.items()
            if e.kind in (EntityKind.SOLUTION, EntityKind.PROJECT)
        )


def test_expand_reveals_direct_children():
    g = kafe_shaped_graph()
    vs = default_view(g)
    project = Token((0, 0))
    before = visible_set(g, vs)
    after = toggle_expand(g, vs, project)
    grown = visible_set(g, after) - before
    assert len(grown) == 2
    assert {g.entities[t].kind for t in grown} == {EntityKind.NAMESPACE}


def test_collapse_then_expand_is_involution_on_visible_set():
    g = kafe_shaped_graph()
    vs = default_view(g)
    project = Token((0, 3))
    ns = Token((0, 3, 0))
    vs = toggle_expand(g, vs, project)
    vs = toggle_expand(g, vs, ns)  # expand a namespace below too
    baseline = visible_set(g, vs)
    collapsed = toggle_expand(g, vs, project)
    assert visible_set(g, collapsed) < baseline
    restored = toggle_expand(g, collapsed, project)
    assert visible_set(g, restored) == baseline


def test_toggle_hidden_token_raises():
    g = kafe_shaped_graph()
    vs = default_view(g)
    with pytest.raises(StateError):
        toggle_expand(g, vs, Token((0, 0, 0)))  # namespace not visible yet


def test_removed_cone_is_excluded_from_queries_until_refresh():
    g = kafe_shaped_graph()
    session = ViewSession(g)
    session.toggle_expand(Token((0, 2)))
    ns = Token((0, 2, 0))
    assert ns in session.visible
    session.remove(ns)
    predicate = compile_query(Query(QueryMode.FULL_TEXT, "ns2"))
    matches = evaluate(predicate, g, session.visible)
    assert all(not str(t).startswith("0.2.0") for t in matches)
    session.refresh()
    assert session.state.removed == frozenset()


def test_refresh_clears_removed_and_highlight_keeps_expansion():
    g = kafe_shaped_graph()
    vs = default_view(g)
    vs = toggle_expand(g, vs, Token((0, 1)))
    vs = remove(g, vs, Token((0, 1, 0)))
    vs = apply(g, frozenset({Token((0,))}), MatchAction.HIGHLIGHT, vs)
    out = refresh(g, vs)
    assert out.removed == frozenset()
    assert out.highlighted is None
    assert Token((0, 1)) in out.expanded


def test_remove_does_not_disturb_unrelated_subtrees():
    g = kafe_shaped_graph()
    untouched = Token((0, 5))

    vs_a = default_view(g)
    vs_a = remove(g, vs_a, Token((0, 1)))
    vs_a = toggle_expand(g, vs_a, untouched)

    vs_b = default_view(g)
    vs_b = toggle_expand(g, vs_b, untouched)

    subtree = lambda vis: {t for t in vis if t.path[:2] == (0, 5)}
    assert subtree(visible_set(g, vs_a)) == subtree(visible_set(g, vs_b))


def test_declares_relation_cannot_be_disabled():
    vs = ViewState(enabled_relations=frozenset())
    assert RelationId.DECLARES in vs.enabled_relations


def test_random_operation_sequences_match_from_scratch_recomputation():
    for seed in range(60):
        rng = random.Random(seed)
        g = make_random_graph(rng, size=70)
        session = ViewSession(g)
        removed_since_refresh: set[Token] = set()
        for _ in range(30):
            roll = rng.random()
            visible = sorted(session.visible)
            if not visible:
                break
            if roll < 0.45:
                target = rng.choice(visible)
                session.toggle_expand(target)
            elif roll < 0.65:
                target = rng.choice(visible)
                session.remove(target)
                removed_since_refresh.add(target)
            elif roll < 0.75:
                session.refresh()
                removed_since_refresh.clear()
            elif roll < 0.9:
                matches = frozenset(rng.sample(visible, k=min(3, len(visible))))
                session.set_state(apply(g, matches, MatchAction.ISOLATE, session.state))
            else:
                kinds = frozenset(rng.sample(list(EntityKind), k=rng.randint(3, 9)))
                from dataclasses import replace

                session.set_state(replace(session.state, enabled_kinds=kinds))
            recomputed = visible_set(g, session.state)
            assert session.visible == recomputed, f"seed={seed}"
            assert not (session.visible & removed_since_refresh)
