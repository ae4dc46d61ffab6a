import { readFileSync } from "node:fs";
import { resolve } from "node:path";

export function loadFixture(name: string): any {
  // vitest runs with frontend/ as the working directory in every environment.
  return JSON.parse(readFileSync(resolve("fixtures", name), "utf-8"));
}

export function hexToFloat(hex: string): number {
  const view = new DataView(new ArrayBuffer(8));
  for (let i = 0; i < 8; i++) {
    view.setUint8(i, parseInt(hex.slice(i * 2, i * 2 + 2), 16));
  }
  return view.getFloat64(0);
}

export function sortedArray(values: Iterable<string>): string[] {
  return [...values].sort();
}
