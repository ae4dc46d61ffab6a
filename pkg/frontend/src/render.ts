// Canvas renderer: draws the scene graph with pan/zoom, outlines, icons,
// corner icons, highlight gray-out, and animated fire/smoke effects (static
// badges under reduced motion). Pure function of the scene + camera + clock.

import { hash32, unitInterval, TAU } from "./detmath";
import { iconFilled, iconPath } from "./icons";
import { Scene, SceneNode } from "./scene";
import { parsePath } from "./tokens";

export interface Camera {
  x: number;
  y: number;
  zoom: number;
}

export function worldToScreen(camera: Camera, canvas: HTMLCanvasElement, x: number, y: number): [number, number] {
  return [
    canvas.width / 2 + (x - camera.x) * camera.zoom,
    canvas.height / 2 + (y - camera.y) * camera.zoom,
  ];
}

export function screenToWorld(camera: Camera, canvas: HTMLCanvasElement, sx: number, sy: number): [number, number] {
  return [
    (sx - canvas.width / 2) / camera.zoom + camera.x,
    (sy - canvas.height / 2) / camera.zoom + camera.y,
  ];
}

const GRAY_FILL = "#4a4e55";
const GRAY_STROKE = "#3a3d43";

function withAlpha(hex: string, alpha: number): string {
  const r = parseInt(hex.slice(1, 3), 16);
  const g = parseInt(hex.slice(3, 5), 16);
  const b = parseInt(hex.slice(5, 7), 16);
  return `rgba(${r},${g},${b},${alpha})`;
}

export interface RenderOptions {
  selected: string | null;
  reducedMotion: boolean;
  clock: number; // milliseconds, drives effect animation
  labels: boolean;
  labelOf: (token: string) => string;
}

export function renderScene(
  ctx: CanvasRenderingContext2D,
  canvas: HTMLCanvasElement,
  scene: Scene,
  positions: Map<string, [number, number]>,
  camera: Camera,
  options: RenderOptions,
): void {
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const live = new Map<string, SceneNode>();
  for (const node of scene.nodes) live.set(node.token, node);

  ctx.lineCap = "round";
  for (const edge of scene.edges) {
    const a = positions.get(edge.source);
    const b = positions.get(edge.target);
    if (!a || !b) continue;
    const grayed =
      (live.get(edge.source)?.grayed ?? false) || (live.get(edge.target)?.grayed ?? false);
    const [ax, ay] = worldToScreen(camera, canvas, a[0], a[1]);
    const [bx, by] = worldToScreen(camera, canvas, b[0], b[1]);
    ctx.strokeStyle = grayed ? GRAY_STROKE : withAlpha(edge.color, 0.75);
    ctx.lineWidth = Math.max(0.4, edge.lineWeight * camera.zoom * 0.75);
    ctx.beginPath();
    ctx.moveTo(ax, ay);
    ctx.lineTo(bx, by);
    ctx.stroke();
  }

  for (const node of scene.nodes) {
    const point = positions.get(node.token);
    if (!point) continue;
    drawNode(ctx, canvas, node, point, camera, options);
  }
}

function drawNode(
  ctx: CanvasRenderingContext2D,
  canvas: HTMLCanvasElement,
  node: SceneNode,
  point: [number, number],
  camera: Camera,
  options: RenderOptions,
): void {
  const [sx, sy] = worldToScreen(camera, canvas, point[0], point[1]);
  const r = Math.max(2.5, node.glyph.radius * camera.zoom);
  if (sx < -r - 40 || sy < -r - 40 || sx > canvas.width + r + 40 || sy > canvas.height + r + 40) {
    return;
  }
  const tint = node.grayed ? GRAY_FILL : node.glyph.tint;

  if (node.glyph.effect !== "none" && !node.grayed) {
    drawEffect(ctx, node, sx, sy, r, options);
  }

  // Body.
  ctx.fillStyle = withAlpha(tint === GRAY_FILL ? GRAY_FILL : node.glyph.tint, node.grayed ? 0.35 : 0.28);
  ctx.beginPath();
  ctx.arc(sx, sy, r, 0, TAU);
  ctx.fill();

  // Outlines, center outward: static modifier, instance members (solid),
  // static members (dashed); saturation fades outward.
  let ring = r;
  const outlines = [node.glyph.innerOutline, node.glyph.middleOutline, node.glyph.outerOutline];
  for (const outline of outlines) {
    if (outline.width <= 0) {
      if (outline === node.glyph.innerOutline) ring += 1.5 * camera.zoom;
      continue;
    }
    const width = Math.max(0.8, outline.width * 1.6 * camera.zoom);
    ring += width / 2 + 0.6 * camera.zoom;
    ctx.strokeStyle = node.grayed ? GRAY_STROKE : withAlpha(node.glyph.tint, outline.saturation);
    ctx.lineWidth = width;
    ctx.setLineDash(outline.style === "dashed" ? [width * 1.6, width * 1.2] : []);
    ctx.beginPath();
    ctx.arc(sx, sy, ring, 0, TAU);
    ctx.stroke();
    ring += width / 2;
  }
  ctx.setLineDash([]);

  if (options.selected === node.token) {
    ctx.strokeStyle = "#f3f6fb";
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    ctx.arc(sx, sy, ring + 3, 0, TAU);
    ctx.stroke();
  }

  // Center icon; unknown ids fall back to a visible placeholder.
  const icon = iconPath(node.glyph.iconId) ?? missingIconPlaceholder(node.glyph.iconId);
  if (icon) {
    const scale = (r * 1.15) / 16;
    ctx.save();
    ctx.translate(sx - 8 * scale, sy - 8 * scale);
    ctx.scale(scale, scale);
    if (iconFilled(node.glyph.iconId)) {
      ctx.fillStyle = node.grayed ? "#7d828a" : withAlpha(node.glyph.tint, 0.95);
      ctx.fill(icon, "evenodd");
    } else {
      ctx.strokeStyle = node.grayed ? "#7d828a" : withAlpha(node.glyph.tint, 0.95);
      ctx.lineWidth = 1.6;
      ctx.stroke(icon);
    }
    ctx.restore();
  }

  // Accessibility corner icon, lower right.
  if (node.glyph.cornerIconId) {
    const corner = iconPath(node.glyph.cornerIconId);
    if (corner) {
      const size = Math.max(7, r * 0.8);
      const scale = size / 16;
      const cx = sx + r * 0.55;
      const cy = sy + r * 0.55;
      ctx.save();
      ctx.fillStyle = "#14161a";
      ctx.beginPath();
      ctx.arc(cx + size / 2 - 1, cy + size / 2 - 1, size * 0.62, 0, TAU);
      ctx.fill();
      ctx.translate(cx, cy);
      ctx.scale(scale, scale);
      ctx.fillStyle = node.grayed ? "#7d828a" : "#d8dce2";
      ctx.fill(corner, "evenodd");
      ctx.restore();
    }
  }

  if (options.labels && camera.zoom > 0.55) {
    ctx.fillStyle = node.grayed ? "#5d626b" : "#c4c9d1";
    ctx.font = `${Math.max(9, 11 * Math.min(1.4, camera.zoom))}px sans-serif`;
    ctx.textAlign = "center";
    ctx.fillText(options.labelOf(node.token), sx, sy + ring + 12);
  }
}

const warnedIcons = new Set<string>();

function missingIconPlaceholder(iconId: string): Path2D | null {
  if (!warnedIcons.has(iconId)) {
    warnedIcons.add(iconId);
    console.warn(`codecarta: no glyph icon for ${JSON.stringify(iconId)}; using placeholder`);
  }
  // A hollow diamond reads as "unknown" without blanking the node.
  return iconPath("badge");
}

function drawEffect(
  ctx: CanvasRenderingContext2D,
  node: SceneNode,
  sx: number,
  sy: number,
  r: number,
  options: RenderOptions,
): void {
  if (options.reducedMotion) {
    const badge = iconPath("badge");
    if (badge) {
      const size = Math.max(10, r * 0.9);
      const scale = size / 16;
      ctx.save();
      ctx.translate(sx - size / 2, sy - r - size - 2);
      ctx.scale(scale, scale);
      ctx.fillStyle = node.glyph.effect === "fire" ? "#e74c3c" : "#95a5a6";
      ctx.fill(badge, "evenodd");
      ctx.restore();
    }
    return;
  }
  const seedBase = parsePath(node.token);
  const count = node.glyph.effect === "fire" ? 14 : 8;
  const time = options.clock / 1000;
  for (let k = 0; k < count; k++) {
    const u = unitInterval(hash32(k, ...seedBase));
    const v = unitInterval(hash32(k + 101, ...seedBase));
    const cycle = (time * (0.35 + 0.4 * v) + u) % 1;
    const rise = cycle * r * (node.glyph.effect === "fire" ? 2.2 : 3.0);
    const sway = Math.sin((time + u * 7) * (1.5 + v)) * r * 0.25;
    const px = sx + (u - 0.5) * r * 1.1 + sway;
    const py = sy - r * 0.4 - rise;
    const fade = 1 - cycle;
    let color: string;
    if (node.glyph.effect === "fire") {
      color = cycle < 0.45 ? `rgba(255,${120 + Math.floor(100 * fade)},40,${0.75 * fade})`
                            : `rgba(120,120,120,${0.4 * fade})`;
    } else {
      color = `rgba(150,150,155,${0.4 * fade})`;
    }
    ctx.fillStyle = color;
    ctx.beginPath();
    ctx.arc(px, py, Math.max(1, r * 0.16 * (0.6 + 0.8 * fade)), 0, TAU);
    ctx.fill();
  }
}
