// Hierarchical numeric tokens in dotted-decimal text form. Tokens are kept as
// strings (they key every map); paths are parsed on demand and compared
// lexicographically over the integer sequence.

export function parsePath(token: string): number[] {
  return token.split(".").map((part) => parseInt(part, 10));
}

export function renderPath(path: number[]): string {
  return path.join(".");
}

export function parentToken(token: string): string | null {
  const cut = token.lastIndexOf(".");
  return cut === -1 ? null : token.slice(0, cut);
}

export function depth(token: string): number {
  return parsePath(token).length - 1;
}

export function comparePaths(a: number[], b: number[]): number {
  const n = Math.min(a.length, b.length);
  for (let i = 0; i < n; i++) {
    if (a[i] !== b[i]) return a[i] - b[i];
  }
  return a.length - b.length;
}

export function compareTokens(a: string, b: string): number {
  return comparePaths(parsePath(a), parsePath(b));
}

export function isAncestor(a: string, b: string): boolean {
  return b.length > a.length && b.startsWith(a + ".");
}

export function sortTokens(tokens: Iterable<string>): string[] {
  return [...tokens].sort(compareTokens);
}
