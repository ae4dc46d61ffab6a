// Glyph descriptors and edge styles; constants mirror the pipeline exactly.

import { Entity, EntityKind, RelationId, RELATION_IDS } from "./model";

export type ScalingMode = "linear" | "log" | "sqrt";
export type EffectId = "none" | "smoke" | "fire";

export interface OutlineSpec {
  style: "solid" | "dashed";
  width: number;
  saturation: number;
}

export interface GlyphSpec {
  iconId: string;
  tint: string;
  cornerIconId: string | null;
  innerOutline: OutlineSpec;
  middleOutline: OutlineSpec;
  outerOutline: OutlineSpec;
  radius: number;
  effect: EffectId;
}

export const DEFAULT_BASE_RADIUS: Record<EntityKind, number> = {
  solution: 16, project: 14, package: 12, namespace: 10, type: 10,
  field: 5, method: 5, property: 5, event: 5,
};

export const DEFAULT_MEMBER_WEIGHT = 0.5;

const OUTLINE_SATURATIONS = [0.9, 0.6, 0.3] as const;

export const KIND_TINTS: Record<EntityKind, string> = {
  solution: "#9059c8", project: "#3f74d9", package: "#8a6d4b",
  namespace: "#6e8296", type: "#e8b931", field: "#5a87b0",
  method: "#7e57c2", property: "#4c9e73", event: "#d98f29",
};

export const TYPE_KIND_TINTS: Record<string, string> = {
  class: "#e8b931", struct: "#38a8c8", enum: "#d9703f",
  interface: "#55b065", delegate: "#b45fb4",
};

export const ACCESSIBILITY_ICONS: Record<string, string | null> = {
  public: null,
  internal: "shield",
  protected: "key",
  protectedInternal: "key-shield",
  privateProtected: "key-lock",
  private: "lock",
};

export interface GlyphConfig {
  baseRadius: Record<EntityKind, number>;
  memberWeight: number;
  scalingMode: ScalingMode;
}

export function defaultGlyphConfig(): GlyphConfig {
  return {
    baseRadius: { ...DEFAULT_BASE_RADIUS },
    memberWeight: DEFAULT_MEMBER_WEIGHT,
    scalingMode: "linear",
  };
}

export function scale(value: number, mode: ScalingMode): number {
  if (mode === "linear") return value;
  if (mode === "log") return Math.log1p(value);
  return Math.sqrt(value);
}

export function nodeRadius(e: Entity, cfg: GlyphConfig): number {
  let base = cfg.baseRadius[e.kind];
  if (e.kind === "type") {
    base = base + cfg.memberWeight * (e.instanceMemberCount + e.staticMemberCount);
  }
  return scale(base, cfg.scalingMode);
}

export function outlineWidth(memberCount: number): number {
  if (memberCount <= 0) return 0;
  return Math.min(Math.max(memberCount / 5, 0.2), 4);
}

export function iconFor(e: Entity): string {
  if (e.kind === "type" && e.typeKind) return e.typeKind;
  return e.kind;
}

export function tintFor(e: Entity): string {
  if (e.kind === "type" && e.typeKind) return TYPE_KIND_TINTS[e.typeKind];
  return KIND_TINTS[e.kind];
}

export function effectFor(e: Entity): EffectId {
  if (e.diagnostics.some((d) => d.severity === "error")) return "fire";
  if (e.diagnostics.some((d) => d.severity === "warning")) return "smoke";
  return "none";
}

export function glyphFor(e: Entity, cfg: GlyphConfig): GlyphSpec {
  const [innerSat, middleSat, outerSat] = OUTLINE_SATURATIONS;
  const corner =
    e.accessibility !== undefined && e.accessibility !== null
      ? ACCESSIBILITY_ICONS[e.accessibility]
      : null;
  const middleWidth = e.kind === "type" ? outlineWidth(e.instanceMemberCount) : 0;
  const outerWidth = e.kind === "type" ? outlineWidth(e.staticMemberCount) : 0;
  return {
    iconId: iconFor(e),
    tint: tintFor(e),
    cornerIconId: corner,
    innerOutline: { style: e.isStatic ? "dashed" : "solid", width: 1, saturation: innerSat },
    middleOutline: { style: "solid", width: middleWidth, saturation: middleSat },
    outerOutline: { style: "dashed", width: outerWidth, saturation: outerSat },
    radius: nodeRadius(e, cfg),
    effect: effectFor(e),
  };
}

export interface EdgeStyle {
  relationId: RelationId;
  color: string;
  lineWeight: number;
  enabled: boolean;
}

export const DEFAULT_EDGE_STYLES: Record<RelationId, EdgeStyle> = {
  declares: { relationId: "declares", color: "#999999", lineWeight: 1.0, enabled: true },
  inheritsFrom: { relationId: "inheritsFrom", color: "#2d9ca8", lineWeight: 1.5, enabled: false },
  typeOf: { relationId: "typeOf", color: "#d98324", lineWeight: 1.25, enabled: false },
  returns: { relationId: "returns", color: "#8e44ad", lineWeight: 0.75, enabled: false },
  dependsOn: { relationId: "dependsOn", color: "#c0392b", lineWeight: 2.0, enabled: false },
};

export interface StyleDocument {
  glyphs: GlyphConfig;
  edgeStyles: Record<RelationId, EdgeStyle>;
}

export function parseStyleDocument(doc: any): StyleDocument {
  const glyphs = defaultGlyphConfig();
  if (doc?.baseRadius) {
    for (const kind of Object.keys(doc.baseRadius)) {
      (glyphs.baseRadius as any)[kind] = doc.baseRadius[kind];
    }
  }
  if (typeof doc?.memberWeight === "number") glyphs.memberWeight = doc.memberWeight;
  if (doc?.scalingMode) glyphs.scalingMode = doc.scalingMode;
  const edgeStyles = {} as Record<RelationId, EdgeStyle>;
  for (const relation of RELATION_IDS) {
    const base = { ...DEFAULT_EDGE_STYLES[relation] };
    const override = doc?.relationStyles?.[relation];
    if (override) {
      if (override.color !== undefined) base.color = override.color;
      if (override.lineWeight !== undefined) base.lineWeight = override.lineWeight;
      if (override.enabled !== undefined) base.enabled = override.enabled;
    }
    edgeStyles[relation] = base;
  }
  return { glyphs, edgeStyles };
}
