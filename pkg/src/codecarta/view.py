"""Diagram visibility semantics: default view, expand/collapse, remove, refresh.

Visibility is a pure function of (graph, ViewState): a node is visible iff all
of its strict ancestors are expanded, neither it nor any ancestor is removed,
and its kind is enabled. Token paths encode the declares ancestry, so all the
checks run on token prefixes. A ViewSession additionally maintains the visible
set incrementally; the two must always agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable

from .errors import StateError
from .model import EntityGraph, EntityKind, RelationId
from .tokens import Token

# Packages stay hidden until the user enables the kind.
DEFAULT_ENABLED_KINDS = frozenset(k for k in EntityKind if k != EntityKind.PACKAGE)


@dataclass(frozen=True)
class ViewState:
    expanded: frozenset[Token] = frozenset()
    removed: frozenset[Token] = frozenset()
    # None means no highlight is active; an empty set grays out everything.
    highlighted: frozenset[Token] | None = None
    enabled_kinds: frozenset[EntityKind] = DEFAULT_ENABLED_KINDS
    enabled_relations: frozenset[RelationId] = frozenset({RelationId.DECLARES})

    def __post_init__(self) -> None:
        # declares can never be disabled.
        if RelationId.DECLARES not in self.enabled_relations:
            object.__setattr__(
                self,
                "enabled_relations",
                frozenset(self.enabled_relations) | {RelationId.DECLARES},
            )


def default_view(g: EntityGraph) -> ViewState:
    """Only the solution and project nodes are visible by default."""
    return ViewState(expanded=frozenset(g.solution_roots))


def is_visible(g: EntityGraph, vs: ViewState, t: Token) -> bool:
    if t not in g.entities or t in vs.removed:
        return False
    if g.entities[t].kind not in vs.enabled_kinds:
        return False
    ancestor = t.parent
    while ancestor is not None:
        if ancestor not in vs.expanded or ancestor in vs.removed:
            return False
        ancestor = ancestor.parent
    return True


def visible_set(g: EntityGraph, vs: ViewState) -> frozenset[Token]:
    """From-scratch recomputation of the visible set."""
    return frozenset(t for t in g.entities if is_visible(g, vs, t))


def toggle_expand(g: EntityGraph, vs: ViewState, t: Token) -> ViewState:
    """Flip t's expansion. Collapsing hides t's whole visible descendant cone;
    descendant expansion flags are kept, so re-expanding restores the view."""
    if not is_visible(g, vs, t):
        raise StateError(f"cannot toggle hidden or unknown token {t}")
    if t in vs.expanded:
        return replace(vs, expanded=vs.expanded - {t})
    return replace(vs, expanded=vs.expanded | {t})


def remove(g: EntityGraph, vs: ViewState, t: Token) -> ViewState:
    """Remove t (and implicitly its cone) from the view until refresh."""
    if not is_visible(g, vs, t):
        raise StateError(f"cannot remove hidden or unknown token {t}")
    return replace(vs, removed=vs.removed | {t})


def refresh(g: EntityGraph, vs: ViewState) -> ViewState:
    """Clear removals and highlights; keep expansion where tokens still exist."""
    return replace(
        vs,
        expanded=frozenset(t for t in vs.expanded if t in g.entities),
        removed=frozenset(),
        highlighted=None,
    )


class ViewSession:
    """Applies view transitions while maintaining the visible set incrementally."""

    def __init__(self, g: EntityGraph, state: ViewState | None = None):
        self.graph = g
        self._state = state if state is not None else default_view(g)
        self._visible = set(visible_set(g, self._state))

    @property
    def state(self) -> ViewState:
        return self._state

    @property
    def visible(self) -> frozenset[Token]:
        return frozenset(self._visible)

    def _visible_cone(self, t: Token) -> Iterable[Token]:
        """t's currently-visible descendant cone, t itself included if visible.

        Descends through expanded intermediates even when a kind filter hides
        them, since their children can still be visible.
        """
        out = []
        stack = [t]
        while stack:
            node = stack.pop()
            if node in self._state.removed:
                continue
            if node in self._visible:
                out.append(node)
            if node == t or node in self._state.expanded:
                stack.extend(self.graph.declares_children.get(node, ()))
        return out

    def _revealed_by_expanding(self, t: Token) -> list[Token]:
        out = []
        stack = list(self.graph.declares_children.get(t, ()))
        while stack:
            node = stack.pop()
            if node in self._state.removed:
                continue
            if self.graph.entities[node].kind in self._state.enabled_kinds:
                out.append(node)
            if node in self._state.expanded:
                stack.extend(self.graph.declares_children.get(node, ()))
        return out

    def toggle_expand(self, t: Token) -> ViewState:
        expanding = t not in self._state.expanded
        new_state = toggle_expand(self.graph, self._state, t)
        if expanding:
            self._state = new_state
            self._visible.update(self._revealed_by_expanding(t))
        else:
            hidden = [n for n in self._visible_cone(t) if n != t]
            self._state = new_state
            self._visible.difference_update(hidden)
        return self._state

    def remove(self, t: Token) -> ViewState:
        cone = list(self._visible_cone(t))
        self._state = remove(self.graph, self._state, t)
        self._visible.difference_update(cone)
        self._visible.discard(t)
        return self._state

    def refresh(self) -> ViewState:
        self._state = refresh(self.graph, self._state)
        self._visible = set(visible_set(self.graph, self._state))
        return self._state

    def set_state(self, state: ViewState) -> ViewState:
        """Adopt an externally produced state (e.g. after an isolate action)."""
        self._state = state
        self._visible = set(visible_set(self.graph, state))
        return self._state
