// The deserialized interchange document plus derived indexes.

import { compareTokens, parentToken, sortTokens } from "./tokens";

export type EntityKind =
  | "solution" | "project" | "package" | "namespace" | "type"
  | "field" | "method" | "property" | "event";

export type RelationId =
  | "declares" | "inheritsFrom" | "typeOf" | "returns" | "dependsOn";

export const RELATION_IDS: RelationId[] = [
  "declares", "inheritsFrom", "typeOf", "returns", "dependsOn",
];

export const KIND_RANK: Record<EntityKind, number> = {
  solution: 0, project: 1, package: 2, namespace: 2, type: 3,
  field: 4, method: 4, property: 4, event: 4,
};

export const ALL_KINDS = Object.keys(KIND_RANK) as EntityKind[];

export const MEMBER_KINDS = new Set<EntityKind>(["field", "method", "property", "event"]);

export interface Diagnostic {
  severity: "error" | "warning" | "hint";
  code: string;
  message: string;
  file?: string;
  line?: number;
  column?: number;
}

export interface Entity {
  token: string;
  name: string;
  kind: EntityKind;
  typeKind?: string;
  methodKind?: string;
  accessibility?: string;
  isStatic: boolean;
  docComment?: string;
  diagnostics: Diagnostic[];
  instanceMemberCount: number;
  staticMemberCount: number;
  extra: Record<string, string | number | boolean>;
}

export interface Graph {
  schemaVersion: string;
  entities: Map<string, Entity>;
  tokens: string[]; // token order
  relations: Record<RelationId, [string, string][]>;
  childrenOf: Map<string, string[]>;
  parentOf: Map<string, string>;
}

export function parseGraphDocument(doc: any): Graph {
  if (!doc || doc.schemaVersion !== "codecarta-graph/1") {
    throw new Error(`unsupported graph document: ${doc?.schemaVersion}`);
  }
  const entities = new Map<string, Entity>();
  for (const token of Object.keys(doc.entities)) {
    const raw = doc.entities[token];
    entities.set(token, {
      token,
      name: raw.name,
      kind: raw.kind,
      typeKind: raw.typeKind,
      methodKind: raw.methodKind,
      accessibility: raw.accessibility,
      isStatic: !!raw.isStatic,
      docComment: raw.docComment,
      diagnostics: raw.diagnostics ?? [],
      instanceMemberCount: raw.instanceMemberCount ?? 0,
      staticMemberCount: raw.staticMemberCount ?? 0,
      extra: raw.extra ?? {},
    });
  }
  const tokens = sortTokens(entities.keys());
  const relations = {} as Record<RelationId, [string, string][]>;
  for (const relation of RELATION_IDS) {
    relations[relation] = (doc.relations?.[relation] ?? []) as [string, string][];
  }
  const childrenOf = new Map<string, string[]>();
  const parentOf = new Map<string, string>();
  for (const [src, dst] of relations.declares) {
    let kids = childrenOf.get(src);
    if (!kids) childrenOf.set(src, (kids = []));
    kids.push(dst);
    parentOf.set(dst, src);
  }
  for (const kids of childrenOf.values()) kids.sort(compareTokens);
  return { schemaVersion: doc.schemaVersion, entities, tokens, relations, childrenOf, parentOf };
}

export function solutionRoots(graph: Graph): string[] {
  return graph.tokens.filter(
    (t) => parentToken(t) === null && graph.entities.get(t)!.kind === "solution",
  );
}
