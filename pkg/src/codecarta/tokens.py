"""Hierarchical numeric tokens: unique identifiers encoding declares paths.

A token is the sequence of sibling ordinals from a declares root down to the
identified entity. Sibling ordinals are fixed by sorting on
(kind rank, case-sensitive name, disambiguator), so the assignment is a pure
function of the forest's shape and independent of discovery order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .errors import AmbiguousSiblingsError, TokenParseError


@dataclass(frozen=True, order=True)
class Token:
    """Non-empty path of non-negative sibling ordinals; orders lexicographically."""

    path: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.path:
            raise ValueError("token path must be non-empty")
        if any(part < 0 for part in self.path):
            raise ValueError(f"token ordinals must be non-negative: {self.path}")

    @property
    def parent(self) -> Token | None:
        """The token with the last ordinal dropped; None for roots."""
        if len(self.path) == 1:
            return None
        return Token(self.path[:-1])

    @property
    def depth(self) -> int:
        """Root depth is 0."""
        return len(self.path) - 1

    def child(self, ordinal: int) -> Token:
        return Token(self.path + (ordinal,))

    def render(self) -> str:
        return render_token(self)

    def __str__(self) -> str:
        return render_token(self)

    def __repr__(self) -> str:
        return f"Token({render_token(self)!r})"


def render_token(t: Token) -> str:
    """Dotted-decimal text form, e.g. (0, 3, 12) -> "0.3.12"."""
    return ".".join(str(part) for part in t.path)


def parse_token(text: str) -> Token:
    """Parse dotted-decimal token text; grammar: uint ("." uint)*, no leading zeros."""
    if not text:
        raise TokenParseError("empty token text", 0)
    parts: list[int] = []
    i = 0
    n = len(text)
    while True:
        start = i
        while i < n and text[i].isdigit():
            i += 1
        if i == start:
            raise TokenParseError("expected a digit", start)
        segment = text[start:i]
        if len(segment) > 1 and segment[0] == "0":
            raise TokenParseError("leading zeros are not allowed", start)
        parts.append(int(segment))
        if i == n:
            break
        if text[i] != ".":
            raise TokenParseError(f"expected '.' or end, got {text[i]!r}", i)
        i += 1
    return Token(tuple(parts))


def is_ancestor(a: Token, b: Token) -> bool:
    """True iff a's path is a strict prefix of b's path."""
    return len(a.path) < len(b.path) and b.path[: len(a.path)] == a.path


@dataclass
class ForestNode:
    """A node of the declares forest as fed to token assignment.

    `key` is the caller's identity for the node (any hashable); `name` is the
    sort name (generic types carry an arity suffix here, e.g. "Registry`2");
    `disambiguator` breaks ties between same-named siblings (for overloaded
    methods: arity plus the ordered rendered parameter types).
    """

    key: Hashable
    kind_rank: int
    name: str
    disambiguator: str = ""
    children: list["ForestNode"] = field(default_factory=list)

    @property
    def sort_key(self) -> tuple[int, str, str]:
        return (self.kind_rank, self.name, self.disambiguator)


def assign_tokens(roots: Sequence[ForestNode]) -> dict[Hashable, Token]:
    """Assign a unique hierarchical token to every node of the forest.

    The result is a bijection from node keys to tokens and depends only on the
    (kind rank, name, disambiguator) structure, not on input order. Duplicate
    sort keys among siblings raise AmbiguousSiblingsError naming the parent.
    """
    out: dict[Hashable, Token] = {}

    def order(parent_name: str, siblings: Sequence[ForestNode]) -> list[ForestNode]:
        ranked = sorted(siblings, key=lambda node: node.sort_key)
        for left, right in zip(ranked, ranked[1:]):
            if left.sort_key == right.sort_key:
                raise AmbiguousSiblingsError(parent_name, right.name, right.disambiguator)
        return ranked

    stack: list[tuple[ForestNode, Token]] = []
    for ordinal, root in enumerate(order("<forest>", roots)):
        stack.append((root, Token((ordinal,))))
    while stack:
        node, token = stack.pop()
        if node.key in out:
            raise ValueError(f"duplicate node key in forest: {node.key!r}")
        out[node.key] = token
        for ordinal, child in enumerate(order(node.name, node.children)):
            stack.append((child, token.child(ordinal)))
    return out
