// The glyph encoder must reproduce the golden table: every field exact,
// including radii (default config is linear, so pure arithmetic).

import { describe, expect, it } from "vitest";
import { defaultGlyphConfig, glyphFor } from "../src/glyphs";
import { Entity } from "../src/model";
import { loadFixture } from "./helpers";

const table = loadFixture("glyph-table.json");

function entityFromRow(row: any): Entity {
  return {
    token: "0",
    name: "probe",
    kind: row.kind,
    typeKind: row.typeKind ?? undefined,
    methodKind: row.methodKind ?? undefined,
    accessibility: row.accessibility ?? undefined,
    isStatic: row.isStatic,
    docComment: undefined,
    diagnostics: row.severities.map((s: string, i: number) => ({
      severity: s,
      code: `D${i}`,
      message: "x",
    })),
    instanceMemberCount: row.instanceMemberCount,
    staticMemberCount: row.staticMemberCount,
    extra: {},
  };
}

describe("glyph table", () => {
  it("matches all golden rows", () => {
    const cfg = defaultGlyphConfig();
    expect(table.rows.length).toBe(1720);
    for (const row of table.rows) {
      const spec = glyphFor(entityFromRow(row.entity), cfg);
      const got = {
        iconId: spec.iconId,
        tint: spec.tint,
        cornerIconId: spec.cornerIconId,
        innerOutline: spec.innerOutline,
        middleOutline: spec.middleOutline,
        outerOutline: spec.outerOutline,
        radius: spec.radius,
        effect: spec.effect,
      };
      expect(got).toEqual(row.expect);
    }
  });
});
