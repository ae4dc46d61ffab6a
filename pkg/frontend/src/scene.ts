// The scene graph: everything the renderer draws, minus pixels. Pure function
// of (graph, view, positions, style); pinned by the golden snapshot fixture.

import { GlyphSpec, StyleDocument, glyphFor } from "./glyphs";
import { Graph, RELATION_IDS, RelationId } from "./model";
import { compareTokens, sortTokens } from "./tokens";
import { Point } from "./tidytree";
import { ViewState, visibleSet } from "./view";

export interface SceneNode {
  token: string;
  x: number;
  y: number;
  grayed: boolean;
  glyph: GlyphSpec;
}

export interface SceneEdge {
  relation: RelationId;
  source: string;
  target: string;
  color: string;
  lineWeight: number;
}

export interface Scene {
  nodes: SceneNode[];
  edges: SceneEdge[];
}

export function buildScene(
  graph: Graph,
  vs: ViewState,
  positions: Map<string, Point>,
  style: StyleDocument,
): Scene {
  const visible = visibleSet(graph, vs);
  const highlighted = vs.highlighted;
  const nodes: SceneNode[] = [];
  for (const token of sortTokens(visible)) {
    const entity = graph.entities.get(token)!;
    const point = positions.get(token);
    if (!point) continue;
    nodes.push({
      token,
      x: point[0],
      y: point[1],
      grayed: highlighted !== null && !highlighted.has(token),
      glyph: glyphFor(entity, style.glyphs),
    });
  }
  const edges: SceneEdge[] = [];
  for (const relation of RELATION_IDS) {
    const edgeStyle = style.edgeStyles[relation];
    if (!vs.enabledRelations.has(relation) || !edgeStyle.enabled) continue;
    const sorted = [...graph.relations[relation]].sort(
      (a, b) => compareTokens(a[0], b[0]) || compareTokens(a[1], b[1]),
    );
    for (const [src, dst] of sorted) {
      if (src !== dst && visible.has(src) && visible.has(dst)) {
        edges.push({
          relation,
          source: src,
          target: dst,
          color: edgeStyle.color,
          lineWeight: edgeStyle.lineWeight,
        });
      }
    }
  }
  return { nodes, edges };
}
