// @vitest-environment jsdom
// Boots the full app against an embedded-document page (canvas stubbed with a
// recording context) and drives the main interactions headlessly.

import { beforeAll, describe, expect, it } from "vitest";
import { loadFixture } from "./helpers";

function makeContextStub(): any {
  const calls: string[] = [];
  const noop = () => undefined;
  return new Proxy(
    { calls },
    {
      get(target: any, prop: string) {
        if (prop === "calls") return target.calls;
        return (...args: any[]) => {
          target.calls.push(String(prop));
          return undefined;
        };
      },
      set() {
        return true;
      },
    },
  );
}

let contextStub: any;

function encodeBlock(id: string, payload: any): string {
  const text = JSON.stringify(payload);
  const bytes = new TextEncoder().encode(text);
  let binary = "";
  bytes.forEach((b) => (binary += String.fromCharCode(b)));
  const b64 = btoa(binary);
  return `<script type="application/vnd.codecarta+base64" id="${id}">${bytes.length}:${b64}</script>`;
}

beforeAll(async () => {
  const scene = loadFixture("scene-fig1.json");
  const layoutDoc = {
    schemaVersion: "codecarta-layout/1",
    positions: scene.positions,
    iteration: 3,
    converged: true,
  };
  document.body.innerHTML =
    '<div id="app" style="width:800px;height:600px"></div>' +
    encodeBlock("codecarta-graph", scene.graph) +
    encodeBlock("codecarta-layout", layoutDoc) +
    encodeBlock("codecarta-style", scene.style);

  contextStub = makeContextStub();
  (HTMLCanvasElement.prototype as any).getContext = () => contextStub;
  (globalThis as any).Path2D = class {
    constructor(public d?: string) {}
  };
  (globalThis as any).matchMedia = () => ({ matches: false });
  let rafCount = 0;
  (globalThis as any).requestAnimationFrame = (fn: FrameRequestCallback) => {
    if (rafCount++ < 3) fn(performance.now());
    return 0;
  };
  await import("../src/main");
  // boot() is async; give the promise chain a tick.
  await new Promise((resolve) => setTimeout(resolve, 50));
});

describe("app boot", () => {
  it("builds the dock, toolbox, canvas, and status line", () => {
    expect(document.getElementById("diagram-canvas")).not.toBeNull();
    expect(document.querySelectorAll(".dock-tab").length).toBe(4);
    expect(document.querySelectorAll(".tool").length).toBe(4);
    expect(document.getElementById("status-line")!.textContent).toContain("node(s)");
    expect(document.querySelector(".boot-error")).toBeNull();
  });

  it("auto-opens the guide panel on first visit with the tour", () => {
    const panel = document.querySelector(".panel")!;
    expect(panel.classList.contains("hidden")).toBe(false);
    expect(document.querySelector(".panel-title")!.textContent).toBe("Guide");
    expect(document.querySelector(".tour-box")).not.toBeNull();
  });

  it("renders the search panel with three modes and both actions", () => {
    (document.querySelector('[data-panel="search"]') as HTMLButtonElement).click();
    const options = [...document.querySelectorAll(".panel select")[0].children].map(
      (option) => (option as HTMLOptionElement).value,
    );
    expect(options).toEqual(["full-text", "regex", "expression"]);
    const labels = [...document.querySelectorAll(".panel .action")].map(
      (button) => button.textContent,
    );
    expect(labels).toContain("Highlight");
    expect(labels).toContain("Isolate");
  });

  it("reports inline errors for a bad expression query", () => {
    const input = document.getElementById("search-input") as HTMLInputElement;
    const select = document.querySelectorAll(".panel select")[0] as HTMLSelectElement;
    select.value = "expression";
    input.value = "kind ==";
    const highlight = [...document.querySelectorAll(".panel .action")].find(
      (b) => b.textContent === "Highlight",
    ) as HTMLButtonElement;
    highlight.click();
    const error = document.querySelector(".query-error")!;
    expect(error.classList.contains("hidden")).toBe(false);
    expect(error.textContent).toContain("^");
  });

  it("highlights matches without removing nodes", () => {
    const input = document.getElementById("search-input") as HTMLInputElement;
    const select = document.querySelectorAll(".panel select")[0] as HTMLSelectElement;
    select.value = "full-text";
    input.value = "geometry";
    const highlight = [...document.querySelectorAll(".panel .action")].find(
      (b) => b.textContent === "Highlight",
    ) as HTMLButtonElement;
    highlight.click();
    expect(document.querySelector(".query-error")!.classList.contains("hidden")).toBe(true);
    expect(document.querySelector(".panel .hint")!.textContent).toContain("match(es)");
  });

  it("shows the layout panel controls", () => {
    (document.querySelector('[data-panel="layout"]') as HTMLButtonElement).click();
    const checkboxes = document.querySelectorAll('.panel input[type="checkbox"]');
    expect(checkboxes.length).toBe(9 + 5); // kinds + relations
    const colors = document.querySelectorAll('.panel input[type="color"]');
    expect(colors.length).toBe(5);
    const refresh = [...document.querySelectorAll(".panel .action")].find(
      (b) => b.textContent === "Refresh",
    );
    expect(refresh).toBeDefined();
  });
});
