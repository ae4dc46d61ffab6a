"""Query compilation and evaluation in three modes, plus highlight/isolate.

Full-text matches case-insensitive substrings of entity names, regex runs a
search over names, and expression mode evaluates the predicate language from
`expr` over any entity field. Matches can be highlighted (non-matches grayed
out in place) or isolated (non-matches removed, keeping declares ancestors so
the visible skeleton never fragments).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from typing import Callable, Iterable

from . import expr as expr_mod
from .errors import PatternError, QueryCompileError
from .model import Entity, EntityGraph
from .tokens import Token
from .view import ViewState, visible_set


class QueryMode(str, enum.Enum):
    FULL_TEXT = "full-text"
    REGEX = "regex"
    EXPRESSION = "expression"


class MatchAction(str, enum.Enum):
    HIGHLIGHT = "highlight"
    ISOLATE = "isolate"


@dataclass(frozen=True)
class Query:
    mode: QueryMode
    source: str


class Predicate:
    """A compiled, reusable query. Runtime failures on an entity count as a
    non-match and are recorded once per distinct message, not once per node."""

    def __init__(self, query: Query, fn: Callable[[Entity], bool]):
        self.query = query
        self._fn = fn
        self.runtime_errors: list[str] = []
        self._seen: set[str] = set()

    def __call__(self, entity: Entity) -> bool:
        try:
            return self._fn(entity)
        except Exception as exc:  # noqa: BLE001 - sandboxed evaluation boundary
            message = f"{type(exc).__name__}: {exc}"
            if message not in self._seen:
                self._seen.add(message)
                self.runtime_errors.append(message)
            return False


def compile_query(query: Query) -> Predicate:
    if not query.source:
        raise QueryCompileError("query source must be non-empty", 0)
    if query.mode == QueryMode.FULL_TEXT:
        needle = query.source.lower()
        return Predicate(query, lambda e: needle in e.name.lower())
    if query.mode == QueryMode.REGEX:
        try:
            pattern = re.compile(query.source)
        except re.error as exc:
            raise PatternError(str(exc.msg), exc.pos or 0) from exc
        return Predicate(query, lambda e: pattern.search(e.name) is not None)
    if query.mode == QueryMode.EXPRESSION:
        fn = expr_mod.compile_expression(query.source)
        return Predicate(query, fn)
    raise QueryCompileError(f"unknown query mode {query.mode!r}", 0)


def evaluate(
    predicate: Callable[[Entity], bool], g: EntityGraph, scope: Iterable[Token]
) -> frozenset[Token]:
    """Matches within scope; removed/unknown tokens are never inspected."""
    return frozenset(t for t in scope if t in g.entities and predicate(g.entities[t]))


def apply(
    g: EntityGraph,
    matches: frozenset[Token],
    action: MatchAction,
    vs: ViewState,
) -> ViewState:
    """Apply a match action to the view.

    Highlight keeps visibility intact and marks non-matches de-emphasized.
    Isolate restricts the view to matches plus their visible declares
    ancestors, extending the removed set with everything else.
    """
    visible = visible_set(g, vs)
    matches = frozenset(matches) & visible
    if action == MatchAction.HIGHLIGHT:
        return replace(vs, highlighted=matches)

    keep = set(matches)
    for t in matches:
        keep.update(a for a in _ancestor_chain(t) if a in visible)
    newly_removed = visible - keep
    if not newly_removed:
        return vs
    return replace(vs, removed=vs.removed | newly_removed)


def _ancestor_chain(t: Token) -> Iterable[Token]:
    ancestor = t.parent
    while ancestor is not None:
        yield ancestor
        ancestor = ancestor.parent


@dataclass(frozen=True)
class PredefinedFilter:
    """A named query template: the library behind the search panel."""

    name: str
    description: str
    param: str | None  # None | "num" | "str"
    template: str

    def instantiate(self, arg: str | float | int | None = None) -> Query:
        if self.param is None:
            if arg is not None:
                raise QueryCompileError(f"{self.name} takes no argument", 0)
            return Query(QueryMode.EXPRESSION, self.template)
        if arg is None:
            raise QueryCompileError(f"{self.name} needs a {self.param} argument", 0)
        if self.param == "num":
            rendered = str(float(arg)) if not isinstance(arg, str) else arg
        else:
            rendered = '"' + str(arg).replace("\\", "\\\\").replace('"', '\\"') + '"'
        return Query(QueryMode.EXPRESSION, self.template.format(arg=rendered))


PREDEFINED_FILTERS: dict[str, PredefinedFilter] = {
    f.name: f
    for f in [
        PredefinedFilter("has-errors", "Entities with error diagnostics", None, "hasErrors"),
        PredefinedFilter(
            "has-warnings", "Entities with warning diagnostics", None, "hasWarnings"
        ),
        PredefinedFilter("documented", "Entities with a doc comment", None, "hasDoc"),
        PredefinedFilter(
            "undocumented-public",
            "Public API without doc comments",
            None,
            'accessibility == "public" && !hasDoc',
        ),
        PredefinedFilter(
            "large-types",
            "Types with more than N members",
            "num",
            'kind == "type" && memberCount > {arg}',
        ),
        PredefinedFilter(
            "static-members",
            "Static members",
            None,
            'isStatic && (kind == "method" || kind == "field" || kind == "property" '
            '|| kind == "event")',
        ),
        PredefinedFilter(
            "doc-mentions",
            "Doc comments containing a keyword",
            "str",
            "docContains({arg})",
        ),
    ]
}

_PREDEF_CALL = re.compile(r"^\s*([a-z][a-z0-9-]*)\s*(?:\(\s*(.*?)\s*\))?\s*$")


def parse_predefined(text: str) -> Query:
    """Parse an invocation like "has-errors" or "large-types(10)" into a Query."""
    m = _PREDEF_CALL.match(text)
    if m is None:
        raise QueryCompileError(f"not a predefined filter invocation: {text!r}", 0)
    name, raw_arg = m.group(1), m.group(2)
    entry = PREDEFINED_FILTERS.get(name)
    if entry is None:
        raise QueryCompileError(
            f"unknown predefined filter {name!r}; available: "
            + ", ".join(sorted(PREDEFINED_FILTERS)),
            0,
        )
    if raw_arg is None or raw_arg == "":
        return entry.instantiate(None)
    if entry.param == "str":
        return entry.instantiate(raw_arg.strip("\"'"))
    return entry.instantiate(raw_arg)
