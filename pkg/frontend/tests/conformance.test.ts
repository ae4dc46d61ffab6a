// Replays the pipeline-generated fixture suite bit-for-bit: view transitions,
// filter matching, and compile-error positions must agree exactly.

import { describe, expect, it } from "vitest";
import { QueryError } from "../src/expr";
import { Query, applyAction, compileQuery, evaluate } from "../src/filters";
import { parseGraphDocument } from "../src/model";
import {
  ViewState,
  defaultView,
  refresh,
  removeNode,
  toggleExpand,
  visibleSet,
} from "../src/view";
import { loadFixture, sortedArray } from "./helpers";

const viewOps = loadFixture("view-ops.json");
const filterCases = loadFixture("filter-cases.json");

describe("view operation scenarios", () => {
  const graph = parseGraphDocument(viewOps.graph);
  for (const scenario of viewOps.scenarios) {
    it(scenario.name, () => {
      let vs: ViewState = defaultView(graph);
      for (const step of scenario.steps) {
        if (step.op === "init") {
          // nothing to apply
        } else if (step.op === "expand" || step.op === "collapse") {
          vs = toggleExpand(graph, vs, step.token);
        } else if (step.op === "remove") {
          vs = removeNode(graph, vs, step.token);
        } else if (step.op === "refresh") {
          vs = refresh(graph, vs);
        } else if (step.op === "isolate" || step.op === "highlight") {
          const predicate = compileQuery(step.query as Query);
          const matches = evaluate(predicate, graph, visibleSet(graph, vs));
          expect(sortedArray(matches)).toEqual(step.expectMatches);
          vs = applyAction(graph, matches, step.op, vs);
          if (step.op === "highlight") {
            expect(sortedArray(vs.highlighted!)).toEqual(step.expectHighlighted);
          }
        } else {
          throw new Error(`unknown op ${step.op}`);
        }
        expect(sortedArray(visibleSet(graph, vs))).toEqual(step.expectVisible);
      }
    });
  }
});

describe("filter cases", () => {
  const graph = parseGraphDocument(filterCases.graph);
  it("matches every fixture case exactly", () => {
    for (const testCase of filterCases.cases) {
      const predicate = compileQuery({ mode: testCase.mode, source: testCase.source });
      const got = evaluate(predicate, graph, graph.tokens);
      expect(sortedArray(got), testCase.source).toEqual(testCase.expect);
      expect(predicate.runtimeErrors).toEqual([]);
    }
  });

  it("reports the same compile errors at the same positions", () => {
    for (const errorCase of filterCases.errors) {
      let caught: QueryError | null = null;
      try {
        compileQuery({ mode: "expression", source: errorCase.source });
      } catch (exc) {
        caught = exc as QueryError;
      }
      expect(caught, errorCase.source).not.toBeNull();
      expect(caught!.kind, errorCase.source).toBe(errorCase.kind);
      expect(caught!.position, errorCase.source).toBe(errorCase.position);
    }
  });
});
