// Radial dendrogram: exact port of the pipeline's tidy tree (uniform leaf
// slots, parents centered on their children's span, one ring per depth).

import { TAU, detCos, detSin } from "./detmath";
import { compareTokens } from "./tokens";

export type Point = [number, number];

export function tidyTreeLayout(
  roots: string[],
  children: Map<string, string[]>,
  ringSpacing: number,
  rotation = 0,
): Map<string, Point> {
  const sortedRoots = [...roots].sort(compareTokens);
  const ordered = new Map<string, string[]>();
  const seen = new Set(sortedRoots);
  const stack = [...sortedRoots];
  const order: string[] = [];
  while (stack.length) {
    const node = stack.pop()!;
    order.push(node);
    const kids = [...(children.get(node) ?? [])].sort(compareTokens);
    ordered.set(node, kids);
    for (const kid of kids) {
      if (seen.has(kid)) throw new Error(`${kid} has multiple parents or forms a cycle`);
      seen.add(kid);
      stack.push(kid);
    }
  }

  const leafCount = new Map<string, number>();
  for (let i = order.length - 1; i >= 0; i--) {
    const node = order[i];
    const kids = ordered.get(node)!;
    leafCount.set(
      node,
      kids.length ? kids.reduce((acc, k) => acc + leafCount.get(k)!, 0) : 1,
    );
  }
  const totalLeaves = sortedRoots.reduce((acc, r) => acc + leafCount.get(r)!, 0);
  const positions = new Map<string, Point>();
  if (totalLeaves === 0) return positions;

  const slot = TAU / totalLeaves;
  const angles = new Map<string, number>();
  let nextSlot = 0;

  const walk: [string, number, boolean][] = [];
  for (let i = sortedRoots.length - 1; i >= 0; i--) walk.push([sortedRoots[i], 0, false]);
  while (walk.length) {
    const [node, depth, childrenDone] = walk.pop()!;
    const kids = ordered.get(node)!;
    if (kids.length && !childrenDone) {
      walk.push([node, depth, true]);
      for (let i = kids.length - 1; i >= 0; i--) walk.push([kids[i], depth + 1, false]);
      continue;
    }
    if (!kids.length) {
      angles.set(node, rotation + (nextSlot + 0.5) * slot);
      nextSlot += 1;
    } else {
      angles.set(node, (angles.get(kids[0])! + angles.get(kids[kids.length - 1])!) / 2);
    }
    const radius = depth * ringSpacing;
    if (radius === 0) positions.set(node, [0, 0]);
    else {
      const theta = angles.get(node)!;
      positions.set(node, [radius * detCos(theta), radius * detSin(theta)]);
    }
  }
  return positions;
}
