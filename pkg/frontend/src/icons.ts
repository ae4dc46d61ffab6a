// Original icon set: simple path glyphs on a 16x16 grid, keyed by the kind /
// type-kind / accessibility vocabulary. Drawn with Path2D, so the bundle
// carries no image assets.

export interface IconSpec {
  path: string;
  fill?: boolean; // default true
}

// Paths are designed for a 16x16 box centered at (8, 8).
export const ICON_PATHS: Record<string, IconSpec> = {
  solution: { path: "M8 1 L15 5 L15 11 L8 15 L1 11 L1 5 Z M8 4 L5 6 L8 8 L11 6 Z" },
  project: { path: "M2 3 L7 3 L9 5 L14 5 L14 13 L2 13 Z" },
  package: { path: "M2 5 L8 2 L14 5 L14 11 L8 14 L2 11 Z M8 5 L5 6.5 L8 8 L11 6.5 Z" },
  namespace: { path: "M5 2 L3 4 L3 7 L2 8 L3 9 L3 12 L5 14 M11 2 L13 4 L13 7 L14 8 L13 9 L13 12 L11 14", fill: false },
  class: { path: "M8 2 A6 6 0 1 0 8 14 A6 6 0 1 0 8 2 M8 5 A3 3 0 1 1 8 11 A3 3 0 1 1 8 5" },
  struct: { path: "M3 3 L13 3 L13 13 L3 13 Z M6 6 L10 6 L10 10 L6 10 Z" },
  enum: { path: "M3 3 L13 3 L13 5 L3 5 Z M3 7 L13 7 L13 9 L3 9 Z M3 11 L13 11 L13 13 L3 13 Z" },
  interface: { path: "M8 2 A6 6 0 1 0 8 14 A6 6 0 1 0 8 2 M8 4.5 A3.5 3.5 0 1 1 8 11.5 A3.5 3.5 0 1 1 8 4.5 M7 6 L9 6 L9 10 L7 10 Z" },
  delegate: { path: "M3 8 L10 8 M7 4 L11 8 L7 12 M12 3 L12 13", fill: false },
  method: { path: "M4 2 L12 8 L4 14 Z" },
  field: { path: "M3 6 L13 6 L13 10 L3 10 Z" },
  property: { path: "M5 2 L11 2 L11 9 L8 12 L5 9 Z M8 12 L8 15" },
  event: { path: "M9 1 L4 9 L7 9 L6 15 L12 6 L9 6 Z" },
  lock: { path: "M5 7 L5 5 A3 3 0 0 1 11 5 L11 7 L12 7 L12 14 L4 14 L4 7 Z M6.5 7 L9.5 7 L9.5 5 A1.5 1.5 0 0 0 6.5 5 Z" },
  key: { path: "M5 3 A3.5 3.5 0 1 0 5 10 L8 10 L8 12 L10 12 L10 14 L13 14 L13 10 L8 6.5 A3.5 3.5 0 0 0 5 3 M4.2 5.4 A1.2 1.2 0 1 1 4.2 7.8 A1.2 1.2 0 1 1 4.2 5.4" },
  shield: { path: "M8 1 L14 3 L14 8 C14 12 11 14 8 15 C5 14 2 12 2 8 L2 3 Z M8 3.2 L8 12.8 C10 12 12 10.5 12 8 L12 4.4 Z" },
  "key-shield": { path: "M8 1 L14 3 L14 8 C14 12 11 14 8 15 C5 14 2 12 2 8 L2 3 Z M6 5 A2 2 0 1 0 6 9 L8 9 L8 11 L10 11 L10 9 L8 7 A2 2 0 0 0 6 5" },
  "key-lock": { path: "M5 7 L5 5 A3 3 0 0 1 11 5 L11 7 L12 7 L12 14 L4 14 L4 7 Z M7 9 L9 9 L9 12 L7 12 Z" },
  badge: { path: "M8 1 L15 14 L1 14 Z M7 6 L9 6 L8.6 10 L7.4 10 Z M7.4 11.5 L8.6 11.5 L8.6 12.8 L7.4 12.8 Z" },
};

const cache = new Map<string, Path2D>();

export function iconPath(id: string): Path2D | null {
  const spec = ICON_PATHS[id];
  if (!spec) return null;
  let path = cache.get(id);
  if (!path) {
    path = new Path2D(spec.path);
    cache.set(id, path);
  }
  return path;
}

export function iconFilled(id: string): boolean {
  return ICON_PATHS[id]?.fill !== false;
}

export const LEGEND: [string, string][] = [
  ["solution", "Solution (workspace root)"],
  ["project", "Project (distribution package)"],
  ["package", "External package"],
  ["namespace", "Namespace (module)"],
  ["class", "Class"],
  ["struct", "Struct (value record)"],
  ["enum", "Enumeration"],
  ["interface", "Interface / protocol"],
  ["delegate", "Delegate (callable alias)"],
  ["method", "Method / function"],
  ["field", "Field"],
  ["property", "Property"],
  ["event", "Event"],
  ["lock", "private (corner icon)"],
  ["key", "protected (corner icon)"],
  ["shield", "internal (corner icon)"],
];
