// Predicate-expression language: lexer, parser, type checker, and compiler.
// A direct port of the pipeline's implementation; error positions and match
// semantics are pinned by the conformance fixtures.

import { Entity } from "./model";

export class QueryError extends Error {
  kind: "syntax" | "type" | "name" | "pattern";
  position: number;
  constructor(kind: QueryError["kind"], message: string, position: number) {
    super(`${message} (at position ${position})`);
    this.kind = kind;
    this.position = position;
  }
}

type ValueType = "str" | "num" | "bool";

const FIELD_TYPES: Record<string, ValueType> = {
  name: "str",
  kind: "str",
  typeKind: "str",
  methodKind: "str",
  accessibility: "str",
  isStatic: "bool",
  memberCount: "num",
  instanceMemberCount: "num",
  staticMemberCount: "num",
  hasErrors: "bool",
  hasWarnings: "bool",
  hasDoc: "bool",
};

const FIELD_GETTERS: Record<string, (e: Entity) => string | number | boolean> = {
  name: (e) => e.name,
  kind: (e) => e.kind,
  typeKind: (e) => e.typeKind ?? "",
  methodKind: (e) => e.methodKind ?? "",
  accessibility: (e) => e.accessibility ?? "",
  isStatic: (e) => e.isStatic,
  memberCount: (e) => e.instanceMemberCount + e.staticMemberCount,
  instanceMemberCount: (e) => e.instanceMemberCount,
  staticMemberCount: (e) => e.staticMemberCount,
  hasErrors: (e) => e.diagnostics.some((d) => d.severity === "error"),
  hasWarnings: (e) => e.diagnostics.some((d) => d.severity === "warning"),
  hasDoc: (e) => e.docComment !== undefined && e.docComment !== null,
};

type Impl = (e: Entity, ...args: any[]) => boolean;

const FUNCTIONS: Record<string, { args: ValueType[]; result: ValueType; impl: Impl }> = {
  docContains: {
    args: ["str"],
    result: "bool",
    impl: (e, needle: string) =>
      (e.docComment ?? "").toLowerCase().includes(needle.toLowerCase()),
  },
  contains: {
    args: ["str", "str"],
    result: "bool",
    impl: (_e, hay: string, needle: string) =>
      hay.toLowerCase().includes(needle.toLowerCase()),
  },
  matches: {
    args: ["str", "str"],
    result: "bool",
    impl: (_e, text: string, pattern: string) => new RegExp(pattern).test(text),
  },
};

export const VALID_NAMES = [
  ...Object.keys(FIELD_TYPES).sort(),
  ...Object.keys(FUNCTIONS).sort(),
];

interface Lexeme {
  kind: "num" | "str" | "ident" | "op" | "eof";
  text: string;
  pos: number;
}

const WS = /^\s+/;
const NUM = /^\d+(?:\.\d+)?/;
const STR = /^"(?:[^"\\]|\\.)*"/;
const IDENT = /^[A-Za-z_][A-Za-z0-9_]*/;
const OP = /^(?:&&|\|\||==|!=|<=|>=|[<>!(),])/;

function lex(source: string): Lexeme[] {
  const out: Lexeme[] = [];
  let i = 0;
  while (i < source.length) {
    const rest = source.slice(i);
    let m: RegExpMatchArray | null;
    if ((m = rest.match(WS))) {
      i += m[0].length;
      continue;
    }
    if ((m = rest.match(NUM))) out.push({ kind: "num", text: m[0], pos: i });
    else if ((m = rest.match(STR))) out.push({ kind: "str", text: m[0], pos: i });
    else if ((m = rest.match(IDENT))) out.push({ kind: "ident", text: m[0], pos: i });
    else if ((m = rest.match(OP))) out.push({ kind: "op", text: m[0], pos: i });
    else throw new QueryError("syntax", `unexpected character ${JSON.stringify(source[i])}`, i);
    i += m[0].length;
  }
  out.push({ kind: "eof", text: "", pos: source.length });
  return out;
}

function unescape(text: string): string {
  const body = text.slice(1, -1);
  return body.replace(/\\(.)/g, (_, c: string) => {
    if (c === "n") return "\n";
    if (c === "t") return "\t";
    if (c === "r") return "\r";
    return c;
  });
}

type Node =
  | { t: "bool-op"; pos: number; op: "&&" | "||"; items: Node[] }
  | { t: "cmp"; pos: number; op: string; left: Node; right: Node }
  | { t: "not"; pos: number; operand: Node }
  | { t: "ident"; pos: number; name: string }
  | { t: "lit"; pos: number; value: string | number | boolean; type: ValueType }
  | { t: "call"; pos: number; name: string; args: Node[] };

class Parser {
  lexemes: Lexeme[];
  i = 0;
  constructor(source: string) {
    this.lexemes = lex(source);
  }
  get cur(): Lexeme {
    return this.lexemes[this.i];
  }
  curIsOp(text: string): boolean {
    const lexeme: Lexeme = this.lexemes[this.i];
    return lexeme.kind === "op" && lexeme.text === text;
  }
  eat(kind: Lexeme["kind"], text?: string): Lexeme {
    const lexeme = this.cur;
    if (lexeme.kind !== kind || (text !== undefined && lexeme.text !== text)) {
      const want = text ?? kind;
      throw new QueryError(
        "syntax",
        `expected '${want}', got '${lexeme.text || "end"}'`,
        lexeme.pos,
      );
    }
    this.i++;
    return lexeme;
  }
  parse(): Node {
    const node = this.or();
    if (this.cur.kind !== "eof") {
      throw new QueryError("syntax", `unexpected '${this.cur.text}'`, this.cur.pos);
    }
    return node;
  }
  or(): Node {
    const first = this.and();
    const items = [first];
    while (this.cur.kind === "op" && this.cur.text === "||") {
      this.eat("op", "||");
      items.push(this.and());
    }
    return items.length === 1 ? first : { t: "bool-op", pos: first.pos, op: "||", items };
  }
  and(): Node {
    const first = this.cmp();
    const items = [first];
    while (this.cur.kind === "op" && this.cur.text === "&&") {
      this.eat("op", "&&");
      items.push(this.cmp());
    }
    return items.length === 1 ? first : { t: "bool-op", pos: first.pos, op: "&&", items };
  }
  cmp(): Node {
    const left = this.term();
    if (
      this.cur.kind === "op" &&
      ["==", "!=", "<", "<=", ">", ">="].includes(this.cur.text)
    ) {
      const op = this.eat("op");
      const right = this.term();
      return { t: "cmp", pos: op.pos, op: op.text, left, right };
    }
    return left;
  }
  term(): Node {
    const lexeme = this.cur;
    if (lexeme.kind === "op" && lexeme.text === "!") {
      this.eat("op", "!");
      return { t: "not", pos: lexeme.pos, operand: this.term() };
    }
    if (lexeme.kind === "op" && lexeme.text === "(") {
      this.eat("op", "(");
      const inner = this.or();
      this.eat("op", ")");
      return inner;
    }
    if (lexeme.kind === "num") {
      this.eat("num");
      return { t: "lit", pos: lexeme.pos, value: parseFloat(lexeme.text), type: "num" };
    }
    if (lexeme.kind === "str") {
      this.eat("str");
      return { t: "lit", pos: lexeme.pos, value: unescape(lexeme.text), type: "str" };
    }
    if (lexeme.kind === "ident") {
      this.eat("ident");
      if (lexeme.text === "true" || lexeme.text === "false") {
        return { t: "lit", pos: lexeme.pos, value: lexeme.text === "true", type: "bool" };
      }
      if (this.curIsOp("(")) {
        this.eat("op", "(");
        const args: Node[] = [];
        if (!this.curIsOp(")")) {
          args.push(this.or());
          while (this.curIsOp(",")) {
            this.eat("op", ",");
            args.push(this.or());
          }
        }
        this.eat("op", ")");
        return { t: "call", pos: lexeme.pos, name: lexeme.text, args };
      }
      return { t: "ident", pos: lexeme.pos, name: lexeme.text };
    }
    throw new QueryError("syntax", `expected a value, got '${lexeme.text || "end"}'`, lexeme.pos);
  }
}

const ORDERED_OPS = new Set(["<", "<=", ">", ">="]);

function check(node: Node): ValueType {
  switch (node.t) {
    case "lit":
      return node.type;
    case "ident": {
      const type = FIELD_TYPES[node.name];
      if (!type) {
        throw new QueryError(
          "name",
          `unknown name '${node.name}'; valid fields: ${VALID_NAMES.join(", ")}`,
          node.pos,
        );
      }
      return type;
    }
    case "call": {
      const fn = FUNCTIONS[node.name];
      if (!fn) {
        throw new QueryError(
          "name",
          `unknown name '${node.name}'; valid fields: ${VALID_NAMES.join(", ")}`,
          node.pos,
        );
      }
      if (node.args.length !== fn.args.length) {
        throw new QueryError(
          "type",
          `${node.name}() takes ${fn.args.length} argument(s), got ${node.args.length}`,
          node.pos,
        );
      }
      node.args.forEach((arg, i) => {
        const actual = check(arg);
        if (actual !== fn.args[i]) {
          throw new QueryError(
            "type",
            `${node.name}() argument must be ${fn.args[i]}, got ${actual}`,
            arg.pos,
          );
        }
      });
      return fn.result;
    }
    case "not":
      if (check(node.operand) !== "bool") {
        throw new QueryError("type", "'!' needs a boolean operand", node.pos);
      }
      return "bool";
    case "cmp": {
      const left = check(node.left);
      const right = check(node.right);
      if (left !== right) {
        throw new QueryError("type", `cannot compare ${left} with ${right}`, node.pos);
      }
      if (ORDERED_OPS.has(node.op) && left !== "num") {
        throw new QueryError("type", `'${node.op}' needs numeric operands`, node.pos);
      }
      return "bool";
    }
    case "bool-op":
      for (const item of node.items) {
        if (check(item) !== "bool") {
          throw new QueryError("type", `'${node.op}' needs boolean operands`, item.pos);
        }
      }
      return "bool";
  }
}

type Evaluator = (e: Entity) => any;

function compileNode(node: Node): Evaluator {
  switch (node.t) {
    case "lit": {
      const value = node.value;
      return () => value;
    }
    case "ident":
      return FIELD_GETTERS[node.name];
    case "call": {
      const fn = FUNCTIONS[node.name].impl;
      const argFns = node.args.map(compileNode);
      return (e) => fn(e, ...argFns.map((f) => f(e)));
    }
    case "not": {
      const inner = compileNode(node.operand);
      return (e) => !inner(e);
    }
    case "cmp": {
      const left = compileNode(node.left);
      const right = compileNode(node.right);
      switch (node.op) {
        case "==": return (e) => left(e) === right(e);
        case "!=": return (e) => left(e) !== right(e);
        case "<": return (e) => left(e) < right(e);
        case "<=": return (e) => left(e) <= right(e);
        case ">": return (e) => left(e) > right(e);
        default: return (e) => left(e) >= right(e);
      }
    }
    case "bool-op": {
      const itemFns = node.items.map(compileNode);
      if (node.op === "&&") return (e) => itemFns.every((f) => f(e));
      return (e) => itemFns.some((f) => f(e));
    }
  }
}

export function compileExpression(source: string): (e: Entity) => boolean {
  const node = new Parser(source).parse();
  if (check(node) !== "bool") {
    throw new QueryError("type", "expression must evaluate to a boolean", node.pos);
  }
  const fn = compileNode(node);
  return (e) => !!fn(e);
}
