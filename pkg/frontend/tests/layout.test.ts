// Deterministic-math parity (bit-exact) and in-page layout equivalence with
// the CLI snapshot (<= 1e-6 units per coordinate).

import { describe, expect, it } from "vitest";
import { detCos, detSin, hash32, unitInterval } from "../src/detmath";
import { defaultLayoutConfig, parseLayoutConfig, runLayout } from "../src/layout";
import { parseGraphDocument } from "../src/model";
import { ViewState } from "../src/view";
import { hexToFloat, loadFixture } from "./helpers";

const detmathCases = loadFixture("detmath-cases.json");
const layoutFixture = loadFixture("layout-200.json");

describe("deterministic math parity", () => {
  it("sin/cos agree bit for bit", () => {
    for (const entry of detmathCases.trig) {
      const x = hexToFloat(entry.x);
      expect(detSin(x)).toBe(hexToFloat(entry.sin));
      expect(detCos(x)).toBe(hexToFloat(entry.cos));
    }
  });

  it("hash32 and unitInterval agree exactly", () => {
    for (const entry of detmathCases.hash) {
      const h = hash32(...entry.values);
      expect(h).toBe(entry.hash);
      expect(unitInterval(h)).toBe(hexToFloat(entry.unit));
    }
  });
});

function viewFromJson(doc: any): ViewState {
  return {
    expanded: new Set(doc.expanded),
    removed: new Set(doc.removed),
    highlighted: doc.highlighted === null ? null : new Set(doc.highlighted),
    enabledKinds: new Set(doc.enabledKinds),
    enabledRelations: new Set(doc.enabledRelations),
  };
}

describe("in-page layout equivalence", () => {
  it("reproduces the CLI snapshot within 1e-6", () => {
    const graph = parseGraphDocument(layoutFixture.graph);
    const vs = viewFromJson(layoutFixture.view);
    const cfg = parseLayoutConfig(layoutFixture.config);
    const result = runLayout(graph, vs, cfg, layoutFixture.seed);

    expect(result.iteration).toBe(layoutFixture.snapshot.iteration);
    expect(result.converged).toBe(layoutFixture.snapshot.converged);

    const expected = layoutFixture.snapshot.positions as Record<string, [number, number]>;
    const tokens = Object.keys(expected);
    expect(result.positions.size).toBe(tokens.length);
    let worst = 0;
    for (const token of tokens) {
      const got = result.positions.get(token);
      expect(got, token).toBeDefined();
      const dx = Math.abs(got![0] - expected[token][0]);
      const dy = Math.abs(got![1] - expected[token][1]);
      worst = Math.max(worst, dx, dy);
    }
    expect(worst).toBeLessThanOrEqual(1e-6);
  });

  it("default config matches the documented defaults", () => {
    const cfg = defaultLayoutConfig();
    expect(cfg.ringSpacing).toBe(60);
    expect(cfg.maxIterations).toBe(2000);
    expect(cfg.convergenceThreshold).toBe(0.1);
    expect(cfg.forces.thetaApprox).toBe(0.7);
  });
});
