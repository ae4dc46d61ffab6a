// Visibility semantics: the same rules as the pipeline's view model, checked
// bit-for-bit by the conformance fixture suite.

import { ALL_KINDS, EntityKind, Graph, RelationId, solutionRoots } from "./model";
import { parentToken } from "./tokens";

export interface ViewState {
  expanded: Set<string>;
  removed: Set<string>;
  highlighted: Set<string> | null;
  enabledKinds: Set<EntityKind>;
  enabledRelations: Set<RelationId>;
}

export function defaultView(graph: Graph): ViewState {
  return {
    expanded: new Set(solutionRoots(graph)),
    removed: new Set(),
    highlighted: null,
    enabledKinds: new Set(ALL_KINDS.filter((k) => k !== "package")),
    enabledRelations: new Set<RelationId>(["declares"]),
  };
}

export function cloneView(vs: ViewState): ViewState {
  return {
    expanded: new Set(vs.expanded),
    removed: new Set(vs.removed),
    highlighted: vs.highlighted === null ? null : new Set(vs.highlighted),
    enabledKinds: new Set(vs.enabledKinds),
    enabledRelations: new Set(vs.enabledRelations),
  };
}

export function isVisible(graph: Graph, vs: ViewState, token: string): boolean {
  const entity = graph.entities.get(token);
  if (!entity || vs.removed.has(token)) return false;
  if (!vs.enabledKinds.has(entity.kind)) return false;
  let ancestor = parentToken(token);
  while (ancestor !== null) {
    if (!vs.expanded.has(ancestor) || vs.removed.has(ancestor)) return false;
    ancestor = parentToken(ancestor);
  }
  return true;
}

export function visibleSet(graph: Graph, vs: ViewState): Set<string> {
  const out = new Set<string>();
  for (const token of graph.tokens) {
    if (isVisible(graph, vs, token)) out.add(token);
  }
  return out;
}

export function toggleExpand(graph: Graph, vs: ViewState, token: string): ViewState {
  if (!isVisible(graph, vs, token)) {
    throw new Error(`cannot toggle hidden or unknown token ${token}`);
  }
  const out = cloneView(vs);
  if (out.expanded.has(token)) out.expanded.delete(token);
  else out.expanded.add(token);
  return out;
}

export function removeNode(graph: Graph, vs: ViewState, token: string): ViewState {
  if (!isVisible(graph, vs, token)) {
    throw new Error(`cannot remove hidden or unknown token ${token}`);
  }
  const out = cloneView(vs);
  out.removed.add(token);
  return out;
}

export function refresh(graph: Graph, vs: ViewState): ViewState {
  const out = cloneView(vs);
  out.expanded = new Set([...out.expanded].filter((t) => graph.entities.has(t)));
  out.removed = new Set();
  out.highlighted = null;
  return out;
}
