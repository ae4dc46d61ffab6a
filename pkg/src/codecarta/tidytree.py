"""Radial dendrogram layout over the declares forest.

Leaves get uniform angular slots around the full circle (trees concatenated in
root order), every internal node sits at the midpoint of its children's span,
and radius equals depth times the ring spacing. Because any two consecutive
leaves belong to different sibling subtrees at some level, uniform slots are
also the gap-maximizing arrangement: sibling subtree intervals are always
disjoint and separated by one slot width (>= the configured minimum gap
whenever the circle has room for it). Runs in O(n) after child ordering.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .detmath import TAU, det_cos, det_sin
from .errors import StructureError
from .tokens import Token

Point = tuple[float, float]


def tidy_tree_detail(
    roots: Sequence[Token],
    children: Mapping[Token, Sequence[Token]],
    ring_spacing: float,
    rotation: float = 0.0,
) -> tuple[dict[Token, Point], dict[Token, float], dict[Token, list[Token]]]:
    """(positions, angles, ordered children); see tidy_tree_layout."""
    roots = sorted(roots)
    if len(roots) != len(set(roots)):
        raise StructureError("duplicate root")

    # Order children and validate single-parent/acyclic structure.
    ordered: dict[Token, list[Token]] = {}
    seen: set[Token] = set(roots)
    stack = list(roots)
    order: list[Token] = []
    while stack:
        node = stack.pop()
        order.append(node)
        kids = sorted(children.get(node, ()))
        ordered[node] = kids
        for kid in kids:
            if kid in seen:
                raise StructureError(f"{kid} has multiple parents or forms a cycle")
            seen.add(kid)
            stack.append(kid)

    leaf_count: dict[Token, int] = {}
    for node in reversed(order):
        kids = ordered[node]
        leaf_count[node] = sum(leaf_count[k] for k in kids) if kids else 1
    total_leaves = sum(leaf_count[root] for root in roots)
    if total_leaves == 0:
        return {}, {}, ordered

    slot = TAU / total_leaves
    angles: dict[Token, float] = {}
    positions: dict[Token, Point] = {}
    next_slot = 0

    # Post-order walk: leaves take consecutive slots, parents center on their
    # children's span. Iterative to survive deep declares chains.
    walk: list[tuple[Token, int, bool]] = [(root, 0, False) for root in reversed(roots)]
    while walk:
        node, depth, children_done = walk.pop()
        kids = ordered[node]
        if kids and not children_done:
            walk.append((node, depth, True))
            for kid in reversed(kids):
                walk.append((kid, depth + 1, False))
            continue
        if not kids:
            angles[node] = rotation + (next_slot + 0.5) * slot
            next_slot += 1
        else:
            angles[node] = (angles[kids[0]] + angles[kids[-1]]) / 2.0
        radius = depth * ring_spacing
        if radius == 0.0:
            positions[node] = (0.0, 0.0)
        else:
            theta = angles[node]
            positions[node] = (radius * det_cos(theta), radius * det_sin(theta))
    return positions, angles, ordered


def tidy_tree_layout(
    roots: Sequence[Token],
    children: Mapping[Token, Sequence[Token]],
    ring_spacing: float,
    rotation: float = 0.0,
) -> dict[Token, Point]:
    """Positions for a forest: roots at the center, one ring per depth level,
    siblings in token order, disjoint subtree sectors."""
    positions, _, _ = tidy_tree_detail(roots, children, ring_spacing, rotation)
    return positions


def subtree_angular_interval(
    node: Token,
    children: Mapping[Token, Sequence[Token]],
    angles: Mapping[Token, float],
) -> tuple[float, float]:
    """[min, max] leaf angle under node; the interval a subtree occupies."""
    low = high = None
    stack = [node]
    while stack:
        current = stack.pop()
        kids = children.get(current, ())
        if kids:
            stack.extend(kids)
        else:
            a = angles[current]
            low = a if low is None else min(low, a)
            high = a if high is None else max(high, a)
    return (low, high)
