// Query compilation (full-text / regex / expression) and match actions.

import { QueryError, compileExpression } from "./expr";
import { Entity, Graph } from "./model";
import { isAncestor } from "./tokens";
import { ViewState, cloneView, visibleSet } from "./view";

export type QueryMode = "full-text" | "regex" | "expression";
export type MatchAction = "highlight" | "isolate";

export interface Query {
  mode: QueryMode;
  source: string;
}

export interface Predicate {
  query: Query;
  fn: (e: Entity) => boolean;
  runtimeErrors: string[];
}

export function compileQuery(query: Query): Predicate {
  if (!query.source) throw new QueryError("syntax", "query source must be non-empty", 0);
  let fn: (e: Entity) => boolean;
  if (query.mode === "full-text") {
    const needle = query.source.toLowerCase();
    fn = (e) => e.name.toLowerCase().includes(needle);
  } else if (query.mode === "regex") {
    let pattern: RegExp;
    try {
      pattern = new RegExp(query.source);
    } catch (exc) {
      throw new QueryError("pattern", String((exc as Error).message), 0);
    }
    fn = (e) => pattern.test(e.name);
  } else {
    fn = compileExpression(query.source);
  }
  const predicate: Predicate = { query, fn, runtimeErrors: [] };
  const seen = new Set<string>();
  const inner = predicate.fn;
  predicate.fn = (e) => {
    try {
      return inner(e);
    } catch (exc) {
      const message = String(exc);
      if (!seen.has(message)) {
        seen.add(message);
        predicate.runtimeErrors.push(message);
      }
      return false;
    }
  };
  return predicate;
}

export function evaluate(
  predicate: Predicate,
  graph: Graph,
  scope: Iterable<string>,
): Set<string> {
  const out = new Set<string>();
  for (const token of scope) {
    const entity = graph.entities.get(token);
    if (entity && predicate.fn(entity)) out.add(token);
  }
  return out;
}

export function applyAction(
  graph: Graph,
  matches: Set<string>,
  action: MatchAction,
  vs: ViewState,
): ViewState {
  const visible = visibleSet(graph, vs);
  const kept = new Set([...matches].filter((t) => visible.has(t)));
  if (action === "highlight") {
    const out = cloneView(vs);
    out.highlighted = kept;
    return out;
  }
  const keep = new Set(kept);
  for (const token of kept) {
    for (const other of visible) {
      if (isAncestor(other, token)) keep.add(other);
    }
  }
  const newlyRemoved = [...visible].filter((t) => !keep.has(t));
  if (newlyRemoved.length === 0) return vs;
  const out = cloneView(vs);
  for (const token of newlyRemoved) out.removed.add(token);
  return out;
}

export interface PredefinedFilter {
  name: string;
  description: string;
  param: "num" | "str" | null;
  template: string;
}

export const PREDEFINED_FILTERS: PredefinedFilter[] = [
  { name: "has-errors", description: "Entities with error diagnostics", param: null, template: "hasErrors" },
  { name: "has-warnings", description: "Entities with warning diagnostics", param: null, template: "hasWarnings" },
  { name: "documented", description: "Entities with a doc comment", param: null, template: "hasDoc" },
  { name: "undocumented-public", description: "Public API without doc comments", param: null, template: 'accessibility == "public" && !hasDoc' },
  { name: "large-types", description: "Types with more than N members", param: "num", template: 'kind == "type" && memberCount > {arg}' },
  { name: "static-members", description: "Static members", param: null, template: 'isStatic && (kind == "method" || kind == "field" || kind == "property" || kind == "event")' },
  { name: "doc-mentions", description: "Doc comments containing a keyword", param: "str", template: "docContains({arg})" },
];

export function instantiatePredefined(entry: PredefinedFilter, arg: string | null): Query {
  if (entry.param === null) return { mode: "expression", source: entry.template };
  if (arg === null || arg === "") {
    throw new QueryError("syntax", `${entry.name} needs a ${entry.param} argument`, 0);
  }
  const rendered =
    entry.param === "num"
      ? arg
      : '"' + arg.replace(/\\/g, "\\\\").replace(/"/g, '\\"') + '"';
  return { mode: "expression", source: entry.template.replace("{arg}", rendered) };
}
