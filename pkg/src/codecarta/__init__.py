"""codecarta: static codebase cartography.

Mines a workspace into an entity graph, serializes it to a versioned JSON
document, computes glyph/edge styles and a deterministic layout, and bundles
everything into a self-contained interactive web page.
"""

from .model import (
    SCHEMA_VERSION,
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
    ValidationReport,
    Violation,
    children,
    member_counts,
    validate_graph,
)
from .tokens import Token, assign_tokens, is_ancestor, parse_token, render_token

__version__ = "0.1.0"

__all__ = [
    "SCHEMA_VERSION",
    "Accessibility",
    "Diagnostic",
    "Entity",
    "EntityGraph",
    "EntityKind",
    "GraphBuilder",
    "MethodKind",
    "RelationId",
    "Severity",
    "Token",
    "TypeKind",
    "ValidationReport",
    "Violation",
    "assign_tokens",
    "children",
    "is_ancestor",
    "member_counts",
    "parse_token",
    "render_token",
    "validate_graph",
    "__version__",
]
