// Layout orchestration: the same seeding, stepping, and annealing as the CLI,
// so in-page layouts reproduce the snapshot for identical inputs.

import { TAU, detCos, detSin, hash32, unitInterval } from "./detmath";
import { fa2Step } from "./fa2";
import { Graph } from "./model";
import { compareTokens, parentToken, parsePath, sortTokens } from "./tokens";
import { ViewState, visibleSet } from "./view";
import { tidyTreeLayout, Point } from "./tidytree";

export interface ForceConfig {
  repulsionStrength: number;
  gravity: number;
  edgeWeightInfluence: number;
  adjustSizes: boolean;
  thetaApprox: number;
}

export interface LayoutConfig {
  ringSpacing: number;
  minAngularGap: number;
  forces: ForceConfig;
  maxIterations: number;
  convergenceThreshold: number;
}

export function defaultLayoutConfig(): LayoutConfig {
  return {
    ringSpacing: 60,
    minAngularGap: 0.5,
    forces: {
      repulsionStrength: 2,
      gravity: 0.05,
      edgeWeightInfluence: 1,
      adjustSizes: false,
      thetaApprox: 0.7,
    },
    maxIterations: 2000,
    convergenceThreshold: 0.1,
  };
}

export function parseLayoutConfig(doc: any): LayoutConfig {
  const cfg = defaultLayoutConfig();
  if (!doc) return cfg;
  if (typeof doc.ringSpacing === "number") cfg.ringSpacing = doc.ringSpacing;
  if (typeof doc.minAngularGap === "number") cfg.minAngularGap = doc.minAngularGap;
  if (typeof doc.maxIterations === "number") cfg.maxIterations = doc.maxIterations;
  if (typeof doc.convergenceThreshold === "number") {
    cfg.convergenceThreshold = doc.convergenceThreshold;
  }
  const forces = doc.forces ?? {};
  if (typeof forces.repulsionStrength === "number") cfg.forces.repulsionStrength = forces.repulsionStrength;
  if (typeof forces.gravity === "number") cfg.forces.gravity = forces.gravity;
  if (typeof forces.edgeWeightInfluence === "number") cfg.forces.edgeWeightInfluence = forces.edgeWeightInfluence;
  if (typeof forces.adjustSizes === "boolean") cfg.forces.adjustSizes = forces.adjustSizes;
  if (typeof forces.thetaApprox === "number") cfg.forces.thetaApprox = forces.thetaApprox;
  return cfg;
}

const STALL_WINDOW = 25;
const STALL_COOLING = 0.5;
const STALL_IMPROVEMENT = 0.995;

export interface LayoutGraph {
  tokens: string[];
  index: Map<string, number>;
  edges: [number, number][];
  sizes: Float64Array;
}

export function buildLayoutGraph(
  graph: Graph,
  vs: ViewState,
  sizes?: Map<string, number>,
): LayoutGraph {
  const visible = sortTokens(visibleSet(graph, vs));
  const index = new Map(visible.map((t, i) => [t, i]));
  const pairKeys = new Set<number>();
  const pairs: [number, number][] = [];
  const relations = [...vs.enabledRelations].sort();
  for (const relation of relations) {
    for (const [src, dst] of graph.relations[relation as keyof Graph["relations"]] ?? []) {
      const si = index.get(src);
      const di = index.get(dst);
      if (si === undefined || di === undefined || si === di) continue;
      const a = si < di ? si : di;
      const b = si < di ? di : si;
      const key = a * visible.length + b;
      if (!pairKeys.has(key)) {
        pairKeys.add(key);
        pairs.push([a, b]);
      }
    }
  }
  pairs.sort((p, q) => (p[0] - q[0]) || (p[1] - q[1]));
  const sizeArr = new Float64Array(visible.length);
  if (sizes) visible.forEach((t, i) => (sizeArr[i] = sizes.get(t) ?? 0));
  return { tokens: visible, index, edges: pairs, sizes: sizeArr };
}

export function visibleForest(graph: Graph, visible: string[]): {
  roots: string[];
  children: Map<string, string[]>;
  detached: string[];
} {
  const visibleSetLocal = new Set(visible);
  const parent = new Map<string, string>();
  const children = new Map<string, string[]>();
  for (const token of visibleSetLocal) {
    let ancestor = parentToken(token);
    while (ancestor !== null && !visibleSetLocal.has(ancestor)) {
      ancestor = parentToken(ancestor);
    }
    if (ancestor !== null) {
      parent.set(token, ancestor);
      let kids = children.get(ancestor);
      if (!kids) children.set(ancestor, (kids = []));
      kids.push(token);
    }
  }
  const roots: string[] = [];
  const detached: string[] = [];
  for (const token of sortTokens(visibleSetLocal)) {
    if (parent.has(token)) continue;
    if (children.has(token) || graph.entities.get(token)!.kind === "solution") {
      roots.push(token);
    } else {
      detached.push(token);
    }
  }
  for (const kids of children.values()) kids.sort(compareTokens);
  return { roots, children, detached };
}

export function seedPositions(
  graph: Graph,
  vs: ViewState,
  cfg: LayoutConfig,
  seed: number,
  warm?: Map<string, Point>,
): Map<string, Point> {
  const visible = sortTokens(visibleSet(graph, vs));
  const { roots, children, detached } = visibleForest(graph, visible);
  const positions = new Map<string, Point>();

  const treePositions = tidyTreeLayout(roots, children, cfg.ringSpacing);
  const depthOf = new Map<string, number>();
  let maxDepth = 0;
  const stack: [string, number][] = roots.map((r) => [r, 0]);
  while (stack.length) {
    const [node, d] = stack.pop()!;
    depthOf.set(node, d);
    if (d > maxDepth) maxDepth = d;
    for (const kid of children.get(node) ?? []) stack.push([kid, d + 1]);
  }
  const outerRadius = (maxDepth + 1) * cfg.ringSpacing;
  const rotation = unitInterval(hash32(seed)) * TAU;

  if (!warm) {
    for (const [token, point] of treePositions) positions.set(token, point);
    detached.forEach((token, k) => {
      const angle = rotation + (TAU * k) / Math.max(1, detached.length);
      positions.set(token, [outerRadius * detCos(angle), outerRadius * detSin(angle)]);
    });
    return positions;
  }

  for (const token of visible) {
    const kept = warm.get(token);
    if (kept) positions.set(token, kept);
  }
  for (const token of sortTokens(treePositions.keys())) {
    if (positions.has(token)) continue;
    let ancestor = parentToken(token);
    let anchor: Point | undefined;
    while (ancestor !== null) {
      anchor = positions.get(ancestor);
      if (anchor) break;
      ancestor = parentToken(ancestor);
    }
    if (!anchor) {
      positions.set(token, treePositions.get(token)!);
    } else {
      const angle = unitInterval(hash32(seed, ...parsePath(token))) * TAU;
      const r = cfg.ringSpacing * 0.25;
      positions.set(token, [anchor[0] + r * detCos(angle), anchor[1] + r * detSin(angle)]);
    }
  }
  detached.forEach((token, k) => {
    if (!positions.has(token)) {
      const angle = rotation + (TAU * k) / Math.max(1, detached.length);
      positions.set(token, [outerRadius * detCos(angle), outerRadius * detSin(angle)]);
    }
  });
  return positions;
}

export interface LayoutState {
  lg: LayoutGraph;
  px: Float64Array;
  py: Float64Array;
  pfx: Float64Array;
  pfy: Float64Array;
  mass: Float64Array;
  pinned: Uint8Array;
  edgeSrc: Int32Array;
  edgeDst: Int32Array;
  gravityCenter: Point;
  seed: number;
  config: LayoutConfig;
  iteration: number;
  globalSpeed: number;
  efficiency: number;
  bestDisp: number;
  stall: number;
  efficiencyCap: number;
  converged: boolean;
  lastMeanDisp: number;
}

export function initState(
  lg: LayoutGraph,
  positions: Map<string, Point>,
  cfg: LayoutConfig,
  seed: number,
  pinned: Set<string> = new Set(),
  gravityCenter?: Point,
): LayoutState {
  const n = lg.tokens.length;
  const px = new Float64Array(n);
  const py = new Float64Array(n);
  lg.tokens.forEach((token, i) => {
    const [x, y] = positions.get(token)!;
    px[i] = x;
    py[i] = y;
  });
  // Deterministic jitter for exactly-coincident nodes.
  const seen = new Map<string, number>();
  lg.tokens.forEach((token, i) => {
    const key = `${px[i]},${py[i]}`;
    const bump = seen.get(key) ?? 0;
    seen.set(key, bump + 1);
    if (bump) {
      const angle = unitInterval(hash32(seed, bump, ...parsePath(token))) * TAU;
      const r = cfg.ringSpacing * 1e-3 * bump;
      px[i] += r * detCos(angle);
      py[i] += r * detSin(angle);
    }
  });
  const pinnedArr = new Uint8Array(n);
  lg.tokens.forEach((token, i) => {
    if (pinned.has(token)) pinnedArr[i] = 1;
  });
  let center: Point;
  if (gravityCenter) center = gravityCenter;
  else {
    let cx = 0;
    let cy = 0;
    for (let i = 0; i < n; i++) {
      cx += px[i];
      cy += py[i];
    }
    center = n ? [cx / n, cy / n] : [0, 0];
  }
  const mass = new Float64Array(n).fill(1);
  for (const [s, t] of lg.edges) {
    mass[s] += 1;
    mass[t] += 1;
  }
  const edgeSrc = new Int32Array(lg.edges.length);
  const edgeDst = new Int32Array(lg.edges.length);
  lg.edges.forEach(([s, t], k) => {
    edgeSrc[k] = s;
    edgeDst[k] = t;
  });
  return {
    lg,
    px,
    py,
    pfx: new Float64Array(n),
    pfy: new Float64Array(n),
    mass,
    pinned: pinnedArr,
    edgeSrc,
    edgeDst,
    gravityCenter: center,
    seed,
    config: cfg,
    iteration: 0,
    globalSpeed: 1,
    efficiency: 1,
    bestDisp: Infinity,
    stall: 0,
    efficiencyCap: 1,
    converged: false,
    lastMeanDisp: Infinity,
  };
}

export function stepState(state: LayoutState): void {
  const cfg = state.config;
  const result = fa2Step(
    state.px,
    state.py,
    state.pfx,
    state.pfy,
    state.mass,
    state.lg.sizes,
    state.pinned,
    state.edgeSrc,
    state.edgeDst,
    cfg.forces.repulsionStrength,
    cfg.forces.gravity,
    state.gravityCenter[0],
    state.gravityCenter[1],
    cfg.forces.thetaApprox,
    cfg.forces.adjustSizes,
    cfg.ringSpacing * 0.5,
    state.globalSpeed,
    state.efficiency,
  );
  if (result.meanDisp < state.bestDisp * STALL_IMPROVEMENT) {
    state.bestDisp = result.meanDisp;
    state.stall = 0;
  } else if (result.globalSwing > 0.2 * result.globalTraction || state.efficiencyCap < 1) {
    state.stall += 1;
    if (state.stall >= STALL_WINDOW) {
      state.efficiencyCap = Math.min(state.efficiencyCap, result.efficiency) * STALL_COOLING;
      state.stall = 0;
    }
  }
  state.globalSpeed = result.globalSpeed;
  state.efficiency = Math.min(result.efficiency, state.efficiencyCap);
  state.iteration += 1;
  state.lastMeanDisp = result.meanDisp;
  state.converged = result.meanDisp <= cfg.convergenceThreshold;
}

export function runLayout(
  graph: Graph,
  vs: ViewState,
  cfg: LayoutConfig,
  seed: number,
  options: { pinned?: Set<string>; sizes?: Map<string, number>; warm?: Map<string, Point> } = {},
): { positions: Map<string, Point>; iteration: number; converged: boolean } {
  const lg = buildLayoutGraph(graph, vs, options.sizes);
  const positions = seedPositions(graph, vs, cfg, seed, options.warm);
  const state = initState(lg, positions, cfg, seed, options.pinned ?? new Set());
  if (!lg.tokens.length) return { positions: new Map(), iteration: 0, converged: true };
  for (let k = 0; k < cfg.maxIterations; k++) {
    stepState(state);
    if (state.converged) break;
  }
  return { positions: statePositions(state), iteration: state.iteration, converged: state.converged };
}

export function statePositions(state: LayoutState): Map<string, Point> {
  const out = new Map<string, Point>();
  state.lg.tokens.forEach((token, i) => out.set(token, [state.px[i], state.py[i]]));
  return out;
}
