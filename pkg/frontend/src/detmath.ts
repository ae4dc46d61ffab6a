// Deterministic math mirroring the pipeline's detmath module operation for
// operation: IEEE-754 double arithmetic only, so both hosts produce identical
// bits for identical inputs.

export const TAU = 6.283185307179586;
const HALF_PI = 1.5707963267948966;

const S1 = -1 / 6;
const S2 = 1 / 120;
const S3 = -1 / 5040;
const S4 = 1 / 362880;
const S5 = -1 / 39916800;
const S6 = 1 / 6227020800;

const C1 = -1 / 2;
const C2 = 1 / 24;
const C3 = -1 / 720;
const C4 = 1 / 40320;
const C5 = -1 / 3628800;
const C6 = 1 / 479001600;

function sinKernel(r: number): number {
  const z = r * r;
  return r * (1 + z * (S1 + z * (S2 + z * (S3 + z * (S4 + z * (S5 + z * S6))))));
}

function cosKernel(r: number): number {
  const z = r * r;
  return 1 + z * (C1 + z * (C2 + z * (C3 + z * (C4 + z * (C5 + z * C6)))));
}

function reduce(x: number): { quadrant: number; r: number } {
  const k = Math.floor(x / HALF_PI + 0.5);
  const quadrant = ((k % 4) + 4) % 4;
  return { quadrant, r: x - k * HALF_PI };
}

export function detSin(x: number): number {
  const { quadrant, r } = reduce(x);
  if (quadrant === 0) return sinKernel(r);
  if (quadrant === 1) return cosKernel(r);
  if (quadrant === 2) return -sinKernel(r);
  return -cosKernel(r);
}

export function detCos(x: number): number {
  const { quadrant, r } = reduce(x);
  if (quadrant === 0) return cosKernel(r);
  if (quadrant === 1) return -sinKernel(r);
  if (quadrant === 2) return -cosKernel(r);
  return sinKernel(r);
}

export function hash32(...values: number[]): number {
  let h = 0x9e3779b9;
  for (const value of values) {
    h = (h + (value >>> 0)) >>> 0;
    h = (h ^ (h >>> 16)) >>> 0;
    h = Math.imul(h, 0x85ebca6b) >>> 0;
    h = (h ^ (h >>> 13)) >>> 0;
    h = Math.imul(h, 0xc2b2ae35) >>> 0;
    h = (h ^ (h >>> 16)) >>> 0;
  }
  return h;
}

export function unitInterval(h: number): number {
  return h / 4294967296;
}
