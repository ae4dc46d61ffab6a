"""Pure computation of node glyph descriptors and relation edge styles.

A glyph encodes, without any renderer: entity kind (center icon + tint),
accessibility (corner icon, absent iff public), staticness (inner outline
style), member counts (middle/outer outline widths), and diagnostics
(fire/smoke effect). Outline saturation decreases from the center outward.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping

from .errors import DocumentFormatError, NotFoundError
from .model import (
    Accessibility,
    Entity,
    EntityKind,
    RelationId,
    Severity,
    TypeKind,
)


class ScalingMode(str, enum.Enum):
    LINEAR = "linear"
    LOGARITHMIC = "log"
    SQUARE_ROOT = "sqrt"


class Effect(str, enum.Enum):
    NONE = "none"
    SMOKE = "smoke"
    FIRE = "fire"


@dataclass(frozen=True)
class OutlineSpec:
    style: str  # "solid" | "dashed"
    width: float
    saturation: float


@dataclass(frozen=True)
class GlyphSpec:
    icon_id: str
    tint: str
    corner_icon_id: str | None
    inner_outline: OutlineSpec
    middle_outline: OutlineSpec
    outer_outline: OutlineSpec
    radius: float
    effect: Effect


# Display-unit defaults; every value is overridable through GlyphConfig.
DEFAULT_BASE_RADIUS: Mapping[EntityKind, float] = {
    EntityKind.SOLUTION: 16.0,
    EntityKind.PROJECT: 14.0,
    EntityKind.PACKAGE: 12.0,
    EntityKind.NAMESPACE: 10.0,
    EntityKind.TYPE: 10.0,
    EntityKind.FIELD: 5.0,
    EntityKind.METHOD: 5.0,
    EntityKind.PROPERTY: 5.0,
    EntityKind.EVENT: 5.0,
}

DEFAULT_MEMBER_WEIGHT = 0.5

# Outline saturations, center outward: static modifier, instance members,
# static members. Must be strictly decreasing.
OUTLINE_SATURATIONS = (0.9, 0.6, 0.3)

# Kind tints chosen to stay distinguishable after the highlight gray-out
# (distinct luminance steps). Types are tinted by their type kind instead.
KIND_TINTS: Mapping[EntityKind, str] = {
    EntityKind.SOLUTION: "#9059c8",
    EntityKind.PROJECT: "#3f74d9",
    EntityKind.PACKAGE: "#8a6d4b",
    EntityKind.NAMESPACE: "#6e8296",
    EntityKind.TYPE: "#e8b931",
    EntityKind.FIELD: "#5a87b0",
    EntityKind.METHOD: "#7e57c2",
    EntityKind.PROPERTY: "#4c9e73",
    EntityKind.EVENT: "#d98f29",
}

TYPE_KIND_TINTS: Mapping[TypeKind, str] = {
    TypeKind.CLASS: "#e8b931",
    TypeKind.STRUCT: "#38a8c8",
    TypeKind.ENUM: "#d9703f",
    TypeKind.INTERFACE: "#55b065",
    TypeKind.DELEGATE: "#b45fb4",
}

ACCESSIBILITY_ICONS: Mapping[Accessibility, str | None] = {
    Accessibility.PUBLIC: None,
    Accessibility.INTERNAL: "shield",
    Accessibility.PROTECTED: "key",
    Accessibility.PROTECTED_INTERNAL: "key-shield",
    Accessibility.PRIVATE_PROTECTED: "key-lock",
    Accessibility.PRIVATE: "lock",
}


@dataclass(frozen=True)
class GlyphConfig:
    base_radius: Mapping[EntityKind, float] = field(
        default_factory=lambda: dict(DEFAULT_BASE_RADIUS)
    )
    member_weight: float = DEFAULT_MEMBER_WEIGHT
    scaling_mode: ScalingMode = ScalingMode.LINEAR


def scale(value: float, mode: ScalingMode) -> float:
    """Strictly increasing, positive on positive inputs."""
    if mode == ScalingMode.LINEAR:
        return value
    if mode == ScalingMode.LOGARITHMIC:
        return math.log1p(value)
    if mode == ScalingMode.SQUARE_ROOT:
        return math.sqrt(value)
    raise ValueError(f"unknown scaling mode: {mode}")


def node_radius(e: Entity, cfg: GlyphConfig) -> float:
    """Kind-determined starting radius, grown by member count for types, scaled."""
    base = cfg.base_radius[e.kind]
    if e.kind == EntityKind.TYPE:
        total = e.instance_member_count + e.static_member_count
        base = base + cfg.member_weight * total
    return scale(base, cfg.scaling_mode)


def outline_width(member_count: int) -> float:
    """Non-decreasing in count; zero exactly when the count is zero."""
    if member_count <= 0:
        return 0.0
    return min(max(member_count / 5.0, 0.2), 4.0)


def icon_for(e: Entity) -> str:
    if e.kind == EntityKind.TYPE and e.type_kind is not None:
        return e.type_kind.value
    return e.kind.value


def tint_for(e: Entity) -> str:
    if e.kind == EntityKind.TYPE and e.type_kind is not None:
        return TYPE_KIND_TINTS[e.type_kind]
    return KIND_TINTS[e.kind]


def effect_for(e: Entity) -> Effect:
    """Fire dominates smoke; hints produce no effect."""
    severities = {d.severity for d in e.diagnostics}
    if Severity.ERROR in severities:
        return Effect.FIRE
    if Severity.WARNING in severities:
        return Effect.SMOKE
    return Effect.NONE


def glyph_for(e: Entity, cfg: GlyphConfig | None = None) -> GlyphSpec:
    """The full visual descriptor for an entity; pure and total."""
    cfg = cfg or GlyphConfig()
    inner_sat, middle_sat, outer_sat = OUTLINE_SATURATIONS
    corner = (
        ACCESSIBILITY_ICONS[e.accessibility] if e.accessibility is not None else None
    )
    # Member-count outlines appear on type nodes only; member glyphs carry just
    # the corner icon and the static-modifier outline.
    if e.kind == EntityKind.TYPE:
        middle_width = outline_width(e.instance_member_count)
        outer_width = outline_width(e.static_member_count)
    else:
        middle_width = 0.0
        outer_width = 0.0
    return GlyphSpec(
        icon_id=icon_for(e),
        tint=tint_for(e),
        corner_icon_id=corner,
        inner_outline=OutlineSpec(
            style="dashed" if e.is_static else "solid", width=1.0, saturation=inner_sat
        ),
        middle_outline=OutlineSpec(style="solid", width=middle_width, saturation=middle_sat),
        outer_outline=OutlineSpec(style="dashed", width=outer_width, saturation=outer_sat),
        radius=node_radius(e, cfg),
        effect=effect_for(e),
    )


@dataclass(frozen=True)
class EdgeStyle:
    relation_id: RelationId
    color: str
    line_weight: float
    enabled: bool


# Only declares is drawn by default; each relation gets a distinct color and
# line weight. All of it is overridable.
DEFAULT_EDGE_STYLES: Mapping[RelationId, EdgeStyle] = {
    RelationId.DECLARES: EdgeStyle(RelationId.DECLARES, "#999999", 1.0, True),
    RelationId.INHERITS_FROM: EdgeStyle(RelationId.INHERITS_FROM, "#2d9ca8", 1.5, False),
    RelationId.TYPE_OF: EdgeStyle(RelationId.TYPE_OF, "#d98324", 1.25, False),
    RelationId.RETURNS: EdgeStyle(RelationId.RETURNS, "#8e44ad", 0.75, False),
    RelationId.DEPENDS_ON: EdgeStyle(RelationId.DEPENDS_ON, "#c0392b", 2.0, False),
}


def edge_style(
    relation: RelationId | str, overrides: Mapping[str, object] | None = None
) -> EdgeStyle:
    """Default style for a relation merged with user overrides."""
    try:
        relation = RelationId(relation)
    except ValueError:
        raise NotFoundError(f"unknown relation id: {relation!r}") from None
    style = DEFAULT_EDGE_STYLES[relation]
    if overrides:
        kwargs = {}
        if "color" in overrides:
            kwargs["color"] = str(overrides["color"])
        if "lineWeight" in overrides:
            kwargs["line_weight"] = float(overrides["lineWeight"])  # type: ignore[arg-type]
        if "enabled" in overrides:
            kwargs["enabled"] = bool(overrides["enabled"])
        style = replace(style, **kwargs)
    return style


@dataclass(frozen=True)
class StyleConfig:
    """Parsed style configuration document (all fields optional on disk)."""

    glyphs: GlyphConfig = field(default_factory=GlyphConfig)
    relation_overrides: Mapping[str, Mapping[str, object]] = field(default_factory=dict)

    def edge_styles(self) -> dict[RelationId, EdgeStyle]:
        return {
            relation: edge_style(relation, self.relation_overrides.get(relation.value))
            for relation in RelationId
        }


def load_style_config(raw: Mapping[str, object]) -> StyleConfig:
    """Build a StyleConfig from a parsed JSON object, validating field shapes."""
    base_radius = dict(DEFAULT_BASE_RADIUS)
    raw_radius = raw.get("baseRadius", {})
    if not isinstance(raw_radius, dict):
        raise DocumentFormatError("baseRadius: expected an object")
    for key, value in raw_radius.items():
        try:
            kind = EntityKind(key)
        except ValueError:
            raise DocumentFormatError(f"baseRadius[{key!r}]: unknown entity kind") from None
        if not isinstance(value, (int, float)) or value <= 0:
            raise DocumentFormatError(f"baseRadius[{key!r}]: expected a positive number")
        base_radius[kind] = float(value)

    member_weight = raw.get("memberWeight", DEFAULT_MEMBER_WEIGHT)
    if not isinstance(member_weight, (int, float)) or member_weight < 0:
        raise DocumentFormatError("memberWeight: expected a non-negative number")

    mode_text = raw.get("scalingMode", ScalingMode.LINEAR.value)
    try:
        mode = ScalingMode(mode_text)
    except ValueError:
        raise DocumentFormatError(f"scalingMode: unknown mode {mode_text!r}") from None

    overrides = raw.get("relationStyles", {})
    if not isinstance(overrides, dict):
        raise DocumentFormatError("relationStyles: expected an object")
    for name, spec in overrides.items():
        try:
            RelationId(name)
        except ValueError:
            raise DocumentFormatError(f"relationStyles[{name!r}]: unknown relation") from None
        if not isinstance(spec, dict):
            raise DocumentFormatError(f"relationStyles[{name!r}]: expected an object")

    return StyleConfig(
        glyphs=GlyphConfig(
            base_radius=base_radius,
            member_weight=float(member_weight),
            scaling_mode=mode,
        ),
        relation_overrides={k: dict(v) for k, v in overrides.items()},
    )


def style_config_document(cfg: StyleConfig) -> dict:
    """The fully resolved style document embedded for the web app."""
    return {
        "baseRadius": {kind.value: cfg.glyphs.base_radius[kind] for kind in EntityKind},
        "memberWeight": cfg.glyphs.member_weight,
        "scalingMode": cfg.glyphs.scaling_mode.value,
        "relationStyles": {
            relation.value: {
                "color": style.color,
                "lineWeight": style.line_weight,
                "enabled": style.enabled,
            }
            for relation, style in cfg.edge_styles().items()
        },
    }


def read_style_config(path: Path) -> StyleConfig:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DocumentFormatError(f"{path}: not valid JSON: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise DocumentFormatError(f"{path}: top level must be an object")
    return load_style_config(raw)
