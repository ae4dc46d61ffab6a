// Dock, panels (Properties, Search, Layout, Guide), and the Toolbox.
// Pure DOM; all state mutations go through the app callbacks.

import { QueryError } from "./expr";
import { PREDEFINED_FILTERS, QueryMode, instantiatePredefined } from "./filters";
import { LEGEND, iconPath } from "./icons";
import { ALL_KINDS, Entity, RELATION_IDS } from "./model";

export type ToolId = "select" | "toggle" | "remove" | "move";
export type PanelId = "properties" | "search" | "layout" | "guide";

export interface AppApi {
  entity(token: string): Entity | undefined;
  selectedToken(): string | null;
  runSearch(mode: QueryMode, source: string, action: "highlight" | "isolate"): void;
  clearSearch(): void;
  searchError(): QueryError | null;
  matchCount(): number | null;
  kindEnabled(kind: string): boolean;
  setKindEnabled(kind: string, on: boolean): void;
  relationEnabled(relation: string): boolean;
  setRelationEnabled(relation: string, on: boolean): void;
  relationColor(relation: string): string;
  setRelationColor(relation: string, color: string): void;
  scalingMode(): string;
  setScalingMode(mode: string): void;
  layoutParam(name: string): number;
  setLayoutParam(name: string, value: number): void;
  refreshLayout(): void;
  visibleCount(): number;
  startTour(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

const PANEL_LABELS: Record<PanelId, string> = {
  properties: "Properties",
  search: "Search",
  layout: "Layout",
  guide: "Guide",
};

const TOOL_LABELS: Record<ToolId, [string, string]> = {
  select: ["▶", "Select: click a node to inspect it"],
  toggle: ["⤢", "Toggle: expand or collapse a node"],
  remove: ["✕", "Remove: hide a node until refresh"],
  move: ["✜", "Move: drag a node (pins it for the layout)"],
};

export class Ui {
  root: HTMLElement;
  app: AppApi;
  activePanel: PanelId | null = null;
  activeTool: ToolId = "select";
  panelBody!: HTMLElement;
  panelTitle!: HTMLElement;
  dockButtons = new Map<PanelId, HTMLButtonElement>();
  toolButtons = new Map<ToolId, HTMLButtonElement>();
  onToolChange: (tool: ToolId) => void = () => undefined;
  private tourStep = -1;
  private tourBox: HTMLElement | null = null;

  constructor(root: HTMLElement, app: AppApi) {
    this.root = root;
    this.app = app;
    this.buildDock();
    this.buildPanel();
    this.buildToolbox();
    this.buildStatus();
  }

  private buildDock(): void {
    const dock = el("div", "dock");
    (Object.keys(PANEL_LABELS) as PanelId[]).forEach((id) => {
      const button = el("button", "dock-tab", PANEL_LABELS[id][0]);
      button.title = PANEL_LABELS[id];
      button.dataset.panel = id;
      button.addEventListener("click", () => this.togglePanel(id));
      this.dockButtons.set(id, button);
      dock.appendChild(button);
    });
    this.root.appendChild(dock);
  }

  private buildPanel(): void {
    const panel = el("aside", "panel hidden");
    this.panelTitle = el("h2", "panel-title");
    this.panelBody = el("div", "panel-body");
    panel.appendChild(this.panelTitle);
    panel.appendChild(this.panelBody);
    this.root.appendChild(panel);
  }

  private buildToolbox(): void {
    const box = el("div", "toolbox");
    (Object.keys(TOOL_LABELS) as ToolId[]).forEach((id) => {
      const [glyph, title] = TOOL_LABELS[id];
      const button = el("button", "tool", glyph);
      button.title = title;
      if (id === this.activeTool) button.classList.add("active");
      button.addEventListener("click", () => this.setTool(id));
      this.toolButtons.set(id, button);
      box.appendChild(button);
    });
    this.root.appendChild(box);
  }

  private buildStatus(): void {
    const status = el("div", "status");
    status.id = "status-line";
    this.root.appendChild(status);
  }

  setStatus(text: string): void {
    const status = document.getElementById("status-line");
    if (status) status.textContent = text;
  }

  setTool(tool: ToolId): void {
    this.activeTool = tool;
    for (const [id, button] of this.toolButtons) {
      button.classList.toggle("active", id === tool);
    }
    this.onToolChange(tool);
  }

  togglePanel(id: PanelId): void {
    if (this.activePanel === id) {
      this.activePanel = null;
    } else {
      this.activePanel = id;
    }
    const panel = this.root.querySelector(".panel")!;
    panel.classList.toggle("hidden", this.activePanel === null);
    for (const [panelId, button] of this.dockButtons) {
      button.classList.toggle("active", panelId === this.activePanel);
    }
    this.renderPanel();
  }

  openPanel(id: PanelId): void {
    if (this.activePanel !== id) this.togglePanel(id);
    else this.renderPanel();
  }

  renderPanel(): void {
    if (this.activePanel === null) return;
    this.panelTitle.textContent = PANEL_LABELS[this.activePanel];
    this.panelBody.replaceChildren();
    if (this.activePanel === "properties") this.renderProperties();
    else if (this.activePanel === "search") this.renderSearch();
    else if (this.activePanel === "layout") this.renderLayout();
    else this.renderGuide();
  }

  // -- Properties ----------------------------------------------------------

  private renderProperties(): void {
    const token = this.app.selectedToken();
    const body = this.panelBody;
    if (!token) {
      body.appendChild(el("p", "hint", "Select a node to inspect the entity it represents."));
      return;
    }
    const entity = this.app.entity(token)!;
    body.appendChild(el("h3", "entity-name", entity.name));
    const chips = el("div", "chips");
    const kindLabel = entity.typeKind ? `${entity.kind} / ${entity.typeKind}` : entity.kind;
    chips.appendChild(el("span", "chip", kindLabel));
    if (entity.methodKind) chips.appendChild(el("span", "chip", entity.methodKind));
    if (entity.accessibility) chips.appendChild(el("span", "chip", entity.accessibility));
    if (entity.isStatic) chips.appendChild(el("span", "chip", "static"));
    body.appendChild(chips);

    const meta = el("dl", "meta");
    const add = (k: string, v: string) => {
      meta.appendChild(el("dt", undefined, k));
      meta.appendChild(el("dd", undefined, v));
    };
    add("token", token);
    if (entity.kind === "type") {
      add("instance members", String(entity.instanceMemberCount));
      add("static members", String(entity.staticMemberCount));
    }
    const file = entity.extra["file"];
    if (typeof file === "string") {
      const start = entity.extra["lineStart"];
      add("source", `${file}${typeof start === "number" ? `:${start}` : ""}`);
    }
    body.appendChild(meta);

    if (entity.docComment) {
      const doc = el("div", "doc");
      for (const paragraph of entity.docComment.split("\n\n")) {
        doc.appendChild(el("p", undefined, paragraph));
      }
      body.appendChild(doc);
    }
    if (entity.diagnostics.length) {
      body.appendChild(el("h4", undefined, "Diagnostics"));
      const list = el("ul", "diagnostics");
      for (const diag of entity.diagnostics) {
        const item = el("li", `diag ${diag.severity}`);
        item.appendChild(el("span", "sev", diag.severity));
        item.appendChild(
          el("span", undefined, ` ${diag.code}: ${diag.message}` +
            (diag.file ? ` (${diag.file}${diag.line ? ":" + diag.line : ""})` : "")),
        );
        list.appendChild(item);
      }
      body.appendChild(list);
    }
  }

  // -- Search --------------------------------------------------------------

  private renderSearch(): void {
    const body = this.panelBody;
    const modeSelect = el("select") as HTMLSelectElement;
    for (const mode of ["full-text", "regex", "expression"]) {
      const option = el("option", undefined, mode) as HTMLOptionElement;
      option.value = mode;
      modeSelect.appendChild(option);
    }
    const input = el("input") as HTMLInputElement;
    input.placeholder = "query…";
    input.id = "search-input";

    const predefined = el("select") as HTMLSelectElement;
    const none = el("option", undefined, "predefined filters…") as HTMLOptionElement;
    none.value = "";
    predefined.appendChild(none);
    for (const entry of PREDEFINED_FILTERS) {
      const option = el(
        "option",
        undefined,
        entry.param ? `${entry.name}(${entry.param})` : entry.name,
      ) as HTMLOptionElement;
      option.value = entry.name;
      option.title = entry.description;
      predefined.appendChild(option);
    }
    predefined.addEventListener("change", () => {
      const entry = PREDEFINED_FILTERS.find((f) => f.name === predefined.value);
      if (!entry) return;
      const arg = entry.param ? prompt(`${entry.name}: ${entry.param} argument`, entry.param === "num" ? "10" : "") : null;
      try {
        const query = instantiatePredefined(entry, arg);
        modeSelect.value = "expression";
        input.value = query.source;
      } catch {
        // leave the input untouched on a missing argument
      }
      predefined.value = "";
    });

    const row = el("div", "row");
    row.appendChild(modeSelect);
    row.appendChild(input);
    const actions = el("div", "row");
    const highlightButton = el("button", "action", "Highlight");
    const isolateButton = el("button", "action", "Isolate");
    const clearButton = el("button", "action subtle", "Clear");
    actions.append(highlightButton, isolateButton, clearButton);

    const errorBox = el("pre", "query-error hidden");
    const resultLine = el("p", "hint");

    const run = (action: "highlight" | "isolate") => {
      this.app.runSearch(modeSelect.value as QueryMode, input.value, action);
      const error = this.app.searchError();
      if (error) {
        errorBox.classList.remove("hidden");
        errorBox.textContent = `${input.value}\n${" ".repeat(Math.min(error.position, 400))}^\n${error.message}`;
        resultLine.textContent = "";
      } else {
        errorBox.classList.add("hidden");
        const count = this.app.matchCount();
        resultLine.textContent = count === null ? "" : `${count} match(es)`;
      }
    };
    highlightButton.addEventListener("click", () => run("highlight"));
    isolateButton.addEventListener("click", () => run("isolate"));
    input.addEventListener("keydown", (event) => {
      if (event.key === "Enter") run("highlight");
    });
    clearButton.addEventListener("click", () => {
      this.app.clearSearch();
      errorBox.classList.add("hidden");
      resultLine.textContent = "";
    });

    body.append(row, predefined, actions, errorBox, resultLine);
  }

  // -- Layout --------------------------------------------------------------

  private renderLayout(): void {
    const body = this.panelBody;
    body.appendChild(el("h4", undefined, "Entity kinds"));
    const kinds = el("div", "checks");
    for (const kind of ALL_KINDS) {
      kinds.appendChild(
        this.checkbox(kind, this.app.kindEnabled(kind), (on) =>
          this.app.setKindEnabled(kind, on),
        ),
      );
    }
    body.appendChild(kinds);

    body.appendChild(el("h4", undefined, "Relations"));
    const relations = el("div", "checks");
    for (const relation of RELATION_IDS) {
      const wrap = el("div", "relation-row");
      wrap.appendChild(
        this.checkbox(
          relation,
          this.app.relationEnabled(relation),
          (on) => this.app.setRelationEnabled(relation, on),
          relation === "declares",
        ),
      );
      const color = el("input") as HTMLInputElement;
      color.type = "color";
      color.value = this.app.relationColor(relation);
      color.title = `${relation} edge color`;
      color.addEventListener("input", () => this.app.setRelationColor(relation, color.value));
      wrap.appendChild(color);
      relations.appendChild(wrap);
    }
    body.appendChild(relations);

    body.appendChild(el("h4", undefined, "Node scaling"));
    const scaling = el("select") as HTMLSelectElement;
    for (const mode of ["linear", "log", "sqrt"]) {
      const option = el("option", undefined, mode) as HTMLOptionElement;
      option.value = mode;
      scaling.appendChild(option);
    }
    scaling.value = this.app.scalingMode();
    scaling.addEventListener("change", () => this.app.setScalingMode(scaling.value));
    body.appendChild(scaling);

    body.appendChild(el("h4", undefined, "Force model"));
    const params = el("div", "params");
    for (const [name, label] of [
      ["ringSpacing", "ring spacing"],
      ["repulsionStrength", "repulsion"],
      ["gravity", "gravity"],
      ["thetaApprox", "theta"],
      ["maxIterations", "max iterations"],
      ["convergenceThreshold", "threshold"],
    ] as [string, string][]) {
      const row = el("label", "param-row");
      row.appendChild(el("span", undefined, label));
      const input = el("input") as HTMLInputElement;
      input.type = "number";
      input.step = "any";
      input.value = String(this.app.layoutParam(name));
      input.addEventListener("change", () => {
        const value = parseFloat(input.value);
        if (!Number.isNaN(value)) this.app.setLayoutParam(name, value);
      });
      row.appendChild(input);
      params.appendChild(row);
    }
    body.appendChild(params);

    const refresh = el("button", "action wide", "Refresh");
    refresh.title = "Clear removals, re-seed new nodes, and re-run the layout";
    refresh.addEventListener("click", () => this.app.refreshLayout());
    body.appendChild(refresh);
  }

  private checkbox(
    label: string,
    checked: boolean,
    onChange: (on: boolean) => void,
    disabled = false,
  ): HTMLElement {
    const wrap = el("label", "check");
    const input = el("input") as HTMLInputElement;
    input.type = "checkbox";
    input.checked = checked;
    input.disabled = disabled;
    input.addEventListener("change", () => onChange(input.checked));
    wrap.appendChild(input);
    wrap.appendChild(el("span", undefined, label));
    return wrap;
  }

  // -- Guide ---------------------------------------------------------------

  private renderGuide(): void {
    const body = this.panelBody;
    body.appendChild(
      el(
        "p",
        undefined,
        "This diagram maps a codebase: each node is a code entity, each edge a " +
          "relation. Only the solution and its projects are shown at first; " +
          "expand nodes to descend into namespaces, types, and members.",
      ),
    );
    const tour = el("button", "action wide", "Start the tour");
    tour.addEventListener("click", () => this.app.startTour());
    body.appendChild(tour);

    body.appendChild(el("h4", undefined, "Legend"));
    const legend = el("div", "legend");
    for (const [iconId, label] of LEGEND) {
      const row = el("div", "legend-row");
      const canvas = el("canvas") as HTMLCanvasElement;
      canvas.width = 18;
      canvas.height = 18;
      const ctx = canvas.getContext("2d")!;
      const path = iconPath(iconId);
      if (path) {
        ctx.scale(18 / 16, 18 / 16);
        ctx.fillStyle = "#c4c9d1";
        ctx.fill(path, "evenodd");
      }
      row.appendChild(canvas);
      row.appendChild(el("span", undefined, label));
      legend.appendChild(row);
    }
    body.appendChild(legend);
    body.appendChild(el("h4", undefined, "Glyph grammar"));
    for (const line of [
      "Inner outline: dashed = static, solid = non-static.",
      "Middle outline (solid): instance member count.",
      "Outer outline (dashed): static member count.",
      "Corner icon: accessibility; public has none.",
      "Fire = error diagnostics, smoke = warnings.",
    ]) {
      body.appendChild(el("p", "hint", line));
    }
  }

  // -- Tour ----------------------------------------------------------------

  private static TOUR: [string, string][] = [
    [".dock", "The dock switches between the Properties, Search, Layout, and Guide panels."],
    [".toolbox", "Tools change what clicking a node does: select, expand/collapse, remove, or move."],
    ["#diagram-canvas", "Scroll to zoom, drag the background to pan. Click a project to select it, then use the toggle tool to expand it."],
    [".dock [data-panel=search]", "Search supports full-text, regex, and expression queries; highlight the matches or isolate them."],
    [".dock [data-panel=layout]", "Enable more entity kinds and relations here, then press Refresh to lay them out."],
  ];

  startTour(): void {
    this.tourStep = -1;
    this.nextTourStep();
  }

  private nextTourStep(): void {
    this.tourStep += 1;
    this.tourBox?.remove();
    document.querySelectorAll(".tour-target").forEach((node) => node.classList.remove("tour-target"));
    if (this.tourStep >= Ui.TOUR.length) {
      this.tourBox = null;
      return;
    }
    const [selector, text] = Ui.TOUR[this.tourStep];
    const target = document.querySelector(selector);
    target?.classList.add("tour-target");
    const box = el("div", "tour-box");
    box.appendChild(el("p", undefined, text));
    const next = el(
      "button",
      "action",
      this.tourStep === Ui.TOUR.length - 1 ? "Done" : "Next",
    );
    next.addEventListener("click", () => this.nextTourStep());
    box.appendChild(next);
    document.body.appendChild(box);
    this.tourBox = box;
  }
}
