// Boot: read the embedded documents (or fetch them in multi-file bundles),
// then wire the model, view, layout, renderer, and UI together.

import { QueryError } from "./expr";
import { MatchAction, QueryMode, applyAction, compileQuery, evaluate } from "./filters";
import { GlyphConfig, StyleDocument, nodeRadius, parseStyleDocument } from "./glyphs";
import {
  LayoutState,
  defaultLayoutConfig,
  buildLayoutGraph,
  initState,
  seedPositions,
  statePositions,
  stepState,
} from "./layout";
import { Entity, Graph, parseGraphDocument } from "./model";
import { Camera, renderScene, screenToWorld, worldToScreen } from "./render";
import { Scene, buildScene } from "./scene";
import { Point } from "./tidytree";
import {
  ViewState,
  cloneView,
  defaultView,
  isVisible,
  refresh,
  removeNode,
  toggleExpand,
  visibleSet,
} from "./view";
import { Ui, ToolId } from "./ui";

function readBlock(id: string): any | null {
  const element = document.getElementById(id);
  if (!element) return null;
  const text = element.textContent!.trim();
  const sep = text.indexOf(":");
  const body = atob(text.slice(sep + 1));
  const bytes = new Uint8Array(body.length);
  for (let i = 0; i < body.length; i++) bytes[i] = body.charCodeAt(i);
  return JSON.parse(new TextDecoder().decode(bytes));
}

async function loadDocument(name: string): Promise<any> {
  const inline = readBlock(`codecarta-${name}`);
  if (inline !== null) return inline;
  const response = await fetch(`${name}.json`);
  return response.json();
}

class App {
  graph: Graph;
  style: StyleDocument;
  view: ViewState;
  positions: Map<string, Point>;
  snapshotPositions: Map<string, Point>;
  layoutCfg = defaultLayoutConfig();
  pinned = new Set<string>();
  camera: Camera = { x: 0, y: 0, zoom: 1 };
  tool: ToolId = "select";
  selected: string | null = null;
  scene!: Scene;
  layoutState: LayoutState | null = null;
  ui!: Ui;
  canvas!: HTMLCanvasElement;
  ctx!: CanvasRenderingContext2D;
  lastSearchError: QueryError | null = null;
  lastMatchCount: number | null = null;
  reducedMotion = false;
  onViewChange: () => void = () => undefined;

  constructor(graphDoc: any, layoutDoc: any, styleDoc: any) {
    this.graph = parseGraphDocument(graphDoc);
    this.style = parseStyleDocument(styleDoc);
    this.view = defaultView(this.graph);
    for (const relation of Object.keys(this.style.edgeStyles) as (keyof typeof this.style.edgeStyles)[]) {
      if (this.style.edgeStyles[relation].enabled) this.view.enabledRelations.add(relation);
    }
    this.snapshotPositions = new Map(
      Object.entries((layoutDoc?.positions ?? {}) as Record<string, [number, number]>),
    );
    this.positions = new Map(this.snapshotPositions);
    this.reducedMotion = matchMedia("(prefers-reduced-motion: reduce)").matches;
  }

  glyphConfig(): GlyphConfig {
    return this.style.glyphs;
  }

  rebuildScene(): void {
    this.scene = buildScene(this.graph, this.view, this.positions, this.style);
    this.ui?.setStatus(
      `${this.scene.nodes.length} visible node(s), ${this.scene.edges.length} edge(s)` +
        (this.layoutState && !this.layoutState.converged ? " — laying out…" : ""),
    );
  }

  fitCamera(): void {
    if (!this.scene.nodes.length) return;
    let minX = Infinity, maxX = -Infinity, minY = Infinity, maxY = -Infinity;
    for (const node of this.scene.nodes) {
      minX = Math.min(minX, node.x);
      maxX = Math.max(maxX, node.x);
      minY = Math.min(minY, node.y);
      maxY = Math.max(maxY, node.y);
    }
    this.camera.x = (minX + maxX) / 2;
    this.camera.y = (minY + maxY) / 2;
    const w = Math.max(60, maxX - minX);
    const h = Math.max(60, maxY - minY);
    this.camera.zoom = Math.min(
      (this.canvas.width * 0.84) / w,
      (this.canvas.height * 0.84) / h,
      4,
    );
  }

  // -- layout --------------------------------------------------------------

  restartLayout(warm: Map<string, Point> | null): void {
    const sizes = new Map<string, number>();
    for (const token of visibleSet(this.graph, this.view)) {
      sizes.set(token, nodeRadius(this.graph.entities.get(token)!, this.style.glyphs));
    }
    const lg = buildLayoutGraph(this.graph, this.view, sizes);
    const seeded = seedPositions(
      this.graph,
      this.view,
      this.layoutCfg,
      1,
      warm ?? undefined,
    );
    this.layoutState = initState(lg, seeded, this.layoutCfg, 1, this.pinned);
    this.positions = statePositions(this.layoutState);
    this.rebuildScene();
  }

  stepLayout(budgetMs: number): void {
    const state = this.layoutState;
    if (!state || state.converged || state.iteration >= this.layoutCfg.maxIterations) return;
    const start = performance.now();
    do {
      stepState(state);
    } while (
      !state.converged &&
      state.iteration < this.layoutCfg.maxIterations &&
      performance.now() - start < budgetMs
    );
    this.positions = statePositions(state);
    this.rebuildScene();
  }

  // -- interactions --------------------------------------------------------

  hitTest(sx: number, sy: number): string | null {
    let best: string | null = null;
    let bestDist = Infinity;
    for (const node of this.scene.nodes) {
      const [nx, ny] = worldToScreen(this.camera, this.canvas, node.x, node.y);
      const radius = Math.max(6, node.glyph.radius * this.camera.zoom) + 3;
      const dx = sx - nx;
      const dy = sy - ny;
      const dist = dx * dx + dy * dy;
      if (dist <= radius * radius && dist < bestDist) {
        best = node.token;
        bestDist = dist;
      }
    }
    return best;
  }

  clickNode(token: string | null): void {
    if (token === null) {
      this.selected = null;
      this.ui.renderPanel();
      this.rebuildScene();
      return;
    }
    if (this.tool === "select") {
      this.selected = token;
      this.ui.openPanel("properties");
    } else if (this.tool === "toggle") {
      const warm = new Map(this.positions);
      this.view = toggleExpand(this.graph, this.view, token);
      this.restartLayout(warm);
      this.onViewChange();
    } else if (this.tool === "remove") {
      const warm = new Map(this.positions);
      this.view = removeNode(this.graph, this.view, token);
      if (this.selected && !isVisible(this.graph, this.view, this.selected)) {
        this.selected = null;
      }
      this.restartLayout(warm);
      this.onViewChange();
    }
    this.rebuildScene();
    this.ui.renderPanel();
  }

  dragNode(token: string, wx: number, wy: number): void {
    this.pinned.add(token);
    this.positions.set(token, [wx, wy]);
    if (this.layoutState) {
      const index = this.layoutState.lg.index.get(token);
      if (index !== undefined) {
        this.layoutState.px[index] = wx;
        this.layoutState.py[index] = wy;
        this.layoutState.pinned[index] = 1;
      }
    }
    this.rebuildScene();
  }

  // -- AppApi (panels) -----------------------------------------------------

  entity(token: string): Entity | undefined {
    return this.graph.entities.get(token);
  }

  selectedToken(): string | null {
    return this.selected;
  }

  runSearch(mode: QueryMode, source: string, action: MatchAction): void {
    this.lastSearchError = null;
    this.lastMatchCount = null;
    let matches: Set<string>;
    try {
      const predicate = compileQuery({ mode, source });
      matches = evaluate(predicate, this.graph, visibleSet(this.graph, this.view));
    } catch (exc) {
      this.lastSearchError =
        exc instanceof QueryError ? exc : new QueryError("syntax", String(exc), 0);
      return; // diagram untouched on a compile error
    }
    this.lastMatchCount = matches.size;
    const warm = new Map(this.positions);
    this.view = applyAction(this.graph, matches, action, this.view);
    if (action === "isolate") this.restartLayout(warm);
    else this.rebuildScene();
    this.onViewChange();
  }

  clearSearch(): void {
    const view = cloneView(this.view);
    view.highlighted = null;
    this.view = view;
    this.lastMatchCount = null;
    this.lastSearchError = null;
    this.rebuildScene();
  }

  searchError(): QueryError | null {
    return this.lastSearchError;
  }

  matchCount(): number | null {
    return this.lastMatchCount;
  }

  kindEnabled(kind: string): boolean {
    return this.view.enabledKinds.has(kind as any);
  }

  setKindEnabled(kind: string, on: boolean): void {
    const view = cloneView(this.view);
    if (on) view.enabledKinds.add(kind as any);
    else view.enabledKinds.delete(kind as any);
    this.view = view;
    // Takes effect on the next Refresh, as in the layout panel contract; the
    // scene however reflects visibility immediately.
    this.rebuildScene();
  }

  relationEnabled(relation: string): boolean {
    return this.view.enabledRelations.has(relation as any);
  }

  setRelationEnabled(relation: string, on: boolean): void {
    const view = cloneView(this.view);
    if (on) view.enabledRelations.add(relation as any);
    else if (relation !== "declares") view.enabledRelations.delete(relation as any);
    this.view = view;
    this.style.edgeStyles[relation as keyof StyleDocument["edgeStyles"]].enabled =
      on || relation === "declares";
    this.rebuildScene();
  }

  relationColor(relation: string): string {
    return this.style.edgeStyles[relation as keyof StyleDocument["edgeStyles"]].color;
  }

  setRelationColor(relation: string, color: string): void {
    this.style.edgeStyles[relation as keyof StyleDocument["edgeStyles"]].color = color;
    this.rebuildScene();
  }

  scalingMode(): string {
    return this.style.glyphs.scalingMode;
  }

  setScalingMode(mode: string): void {
    this.style.glyphs.scalingMode = mode as GlyphConfig["scalingMode"];
    this.rebuildScene();
  }

  layoutParam(name: string): number {
    const cfg = this.layoutCfg;
    switch (name) {
      case "ringSpacing": return cfg.ringSpacing;
      case "repulsionStrength": return cfg.forces.repulsionStrength;
      case "gravity": return cfg.forces.gravity;
      case "thetaApprox": return cfg.forces.thetaApprox;
      case "maxIterations": return cfg.maxIterations;
      default: return cfg.convergenceThreshold;
    }
  }

  setLayoutParam(name: string, value: number): void {
    const cfg = this.layoutCfg;
    if (name === "ringSpacing") cfg.ringSpacing = value;
    else if (name === "repulsionStrength") cfg.forces.repulsionStrength = value;
    else if (name === "gravity") cfg.forces.gravity = value;
    else if (name === "thetaApprox") cfg.forces.thetaApprox = value;
    else if (name === "maxIterations") cfg.maxIterations = value;
    else cfg.convergenceThreshold = value;
  }

  refreshLayout(): void {
    const warm = new Map(this.positions);
    this.view = refresh(this.graph, this.view);
    this.restartLayout(warm);
    this.ui.renderPanel();
    this.onViewChange();
  }

  visibleCount(): number {
    return this.scene.nodes.length;
  }

  startTour(): void {
    this.ui.startTour();
  }
}

async function boot(): Promise<void> {
  const [graphDoc, layoutDoc, styleDoc] = await Promise.all([
    loadDocument("graph"),
    loadDocument("layout"),
    loadDocument("style"),
  ]);
  const root = document.getElementById("app")!;
  const app = new App(graphDoc, layoutDoc, styleDoc);

  const canvas = document.createElement("canvas");
  canvas.id = "diagram-canvas";
  root.appendChild(canvas);
  app.canvas = canvas;
  app.ctx = canvas.getContext("2d")!;
  const resize = () => {
    canvas.width = root.clientWidth;
    canvas.height = root.clientHeight;
  };
  resize();
  addEventListener("resize", resize);

  const ui = new Ui(root, app);
  app.ui = ui;
  ui.onToolChange = (tool) => (app.tool = tool);

  app.rebuildScene();
  app.fitCamera();

  // Pointer interactions: wheel zoom, background pan, node click/drag.
  let dragging: { kind: "pan" | "node"; token?: string; lastX: number; lastY: number } | null =
    null;
  let moved = false;
  canvas.addEventListener("pointerdown", (event) => {
    const token = app.hitTest(event.offsetX, event.offsetY);
    moved = false;
    if (token && app.tool === "move") {
      dragging = { kind: "node", token, lastX: event.offsetX, lastY: event.offsetY };
    } else if (!token) {
      dragging = { kind: "pan", lastX: event.offsetX, lastY: event.offsetY };
    } else {
      dragging = null;
    }
    canvas.setPointerCapture(event.pointerId);
  });
  canvas.addEventListener("pointermove", (event) => {
    if (!dragging) return;
    const dx = event.offsetX - dragging.lastX;
    const dy = event.offsetY - dragging.lastY;
    if (Math.abs(dx) + Math.abs(dy) > 2) moved = true;
    dragging.lastX = event.offsetX;
    dragging.lastY = event.offsetY;
    if (dragging.kind === "pan") {
      app.camera.x -= dx / app.camera.zoom;
      app.camera.y -= dy / app.camera.zoom;
    } else if (dragging.token) {
      const [wx, wy] = screenToWorld(app.camera, canvas, event.offsetX, event.offsetY);
      app.dragNode(dragging.token, wx, wy);
    }
  });
  canvas.addEventListener("pointerup", (event) => {
    const wasDragging = dragging;
    dragging = null;
    if (!moved && (!wasDragging || wasDragging.kind !== "node")) {
      app.clickNode(app.hitTest(event.offsetX, event.offsetY));
    }
  });
  canvas.addEventListener("wheel", (event) => {
    event.preventDefault();
    const [wx, wy] = screenToWorld(app.camera, canvas, event.offsetX, event.offsetY);
    const factor = Math.exp(-event.deltaY * 0.0012);
    app.camera.zoom = Math.min(12, Math.max(0.02, app.camera.zoom * factor));
    const [nx, ny] = screenToWorld(app.camera, canvas, event.offsetX, event.offsetY);
    app.camera.x += wx - nx;
    app.camera.y += wy - ny;
  }, { passive: false });

  // View-state history: each structural change pushes the serialized view so
  // back/forward restores it (best effort; file:// may refuse pushState).
  const serializeView = (vs: any) => ({
    expanded: [...vs.expanded],
    removed: [...vs.removed],
    highlighted: vs.highlighted === null ? null : [...vs.highlighted],
    enabledKinds: [...vs.enabledKinds],
    enabledRelations: [...vs.enabledRelations],
  });
  app.onViewChange = () => {
    try {
      history.pushState(serializeView(app.view), "");
    } catch {
      // navigation state is an enhancement only
    }
  };
  addEventListener("popstate", (event) => {
    const doc = event.state;
    if (!doc) return;
    app.view = {
      expanded: new Set<string>(doc.expanded),
      removed: new Set<string>(doc.removed),
      highlighted: doc.highlighted === null ? null : new Set<string>(doc.highlighted),
      enabledKinds: new Set(doc.enabledKinds),
      enabledRelations: new Set(doc.enabledRelations),
    };
    app.restartLayout(new Map(app.positions));
    app.ui.renderPanel();
  });

  // First visit: open the guide, which nobody finds on their own otherwise.
  const visitedKey = "codecarta-visited";
  try {
    if (!localStorage.getItem(visitedKey)) {
      localStorage.setItem(visitedKey, "1");
      ui.openPanel("guide");
      ui.startTour();
    }
  } catch {
    // storage may be unavailable from file:// contexts; skip silently
  }

  const frame = () => {
    app.stepLayout(8);
    renderScene(app.ctx, canvas, app.scene, app.positions, app.camera, {
      selected: app.selected,
      reducedMotion: app.reducedMotion,
      clock: performance.now(),
      labels: true,
      labelOf: (token) => app.graph.entities.get(token)?.name ?? token,
    });
    requestAnimationFrame(frame);
  };
  requestAnimationFrame(frame);
}

boot().catch((error) => {
  const root = document.getElementById("app");
  if (root) {
    const box = document.createElement("pre");
    box.className = "boot-error";
    box.textContent = `failed to start: ${error}`;
    root.appendChild(box);
  }
});
