// The scene graph for the sample-diagram fixture (declares gray, inheritance
// teal, returns purple) must match the golden snapshot exactly.

import { describe, expect, it } from "vitest";
import { parseStyleDocument } from "../src/glyphs";
import { parseGraphDocument } from "../src/model";
import { buildScene } from "../src/scene";
import { Point } from "../src/tidytree";
import { ViewState } from "../src/view";
import { loadFixture } from "./helpers";

const fixture = loadFixture("scene-fig1.json");

describe("scene snapshot", () => {
  it("matches the golden scene graph", () => {
    const graph = parseGraphDocument(fixture.graph);
    const vs: ViewState = {
      expanded: new Set(fixture.view.expanded),
      removed: new Set(fixture.view.removed),
      highlighted:
        fixture.view.highlighted === null ? null : new Set(fixture.view.highlighted),
      enabledKinds: new Set(fixture.view.enabledKinds),
      enabledRelations: new Set(fixture.view.enabledRelations),
    };
    const style = parseStyleDocument(fixture.style);
    const positions = new Map<string, Point>(
      Object.entries(fixture.positions as Record<string, [number, number]>),
    );
    const scene = buildScene(graph, vs, positions, style);

    const got = {
      nodes: scene.nodes.map((node) => ({
        token: node.token,
        x: node.x,
        y: node.y,
        grayed: node.grayed,
        glyph: {
          iconId: node.glyph.iconId,
          tint: node.glyph.tint,
          cornerIconId: node.glyph.cornerIconId,
          innerOutline: node.glyph.innerOutline,
          middleOutline: node.glyph.middleOutline,
          outerOutline: node.glyph.outerOutline,
          radius: node.glyph.radius,
          effect: node.glyph.effect,
        },
      })),
      edges: scene.edges.map((edge) => ({
        relation: edge.relation,
        source: edge.source,
        target: edge.target,
        color: edge.color,
        lineWeight: edge.lineWeight,
      })),
    };
    expect(got).toEqual(fixture.expectScene);
  });

  it("edge colors follow the sample-diagram legend", () => {
    const style = parseStyleDocument(fixture.style);
    expect(style.edgeStyles.declares.color).toBe("#999999");
    expect(style.edgeStyles.inheritsFrom.color).toBe("#2d9ca8");
    expect(style.edgeStyles.returns.color).toBe("#8e44ad");
    const colors = new Set(
      Object.values(style.edgeStyles).map((edgeStyle) => edgeStyle.color),
    );
    expect(colors.size).toBe(5);
  });
});

describe("highlight gray-out", () => {
  it("grays exactly the non-matches, removing nothing", () => {
    const graph = parseGraphDocument(fixture.graph);
    const matches = new Set<string>(
      graph.tokens.filter((t) => graph.entities.get(t)!.name.includes("S")),
    );
    const vs: ViewState = {
      expanded: new Set(fixture.view.expanded),
      removed: new Set(fixture.view.removed),
      highlighted: matches,
      enabledKinds: new Set(fixture.view.enabledKinds),
      enabledRelations: new Set(fixture.view.enabledRelations),
    };
    const style = parseStyleDocument(fixture.style);
    const positions = new Map<string, Point>(
      Object.entries(fixture.positions as Record<string, [number, number]>),
    );
    const scene = buildScene(graph, vs, positions, style);
    expect(scene.nodes.length).toBe(fixture.expectScene.nodes.length);
    for (const node of scene.nodes) {
      expect(node.grayed, node.token).toBe(!matches.has(node.token));
    }
  });
});
