"use strict";
(() => {
  // src/expr.ts
  var QueryError = class extends Error {
    constructor(kind, message, position) {
      super(`${message} (at position ${position})`);
      this.kind = kind;
      this.position = position;
    }
  };
  var FIELD_TYPES = {
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
    hasDoc: "bool"
  };
  var FIELD_GETTERS = {
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
    hasDoc: (e) => e.docComment !== void 0 && e.docComment !== null
  };
  var FUNCTIONS = {
    docContains: {
      args: ["str"],
      result: "bool",
      impl: (e, needle) => (e.docComment ?? "").toLowerCase().includes(needle.toLowerCase())
    },
    contains: {
      args: ["str", "str"],
      result: "bool",
      impl: (_e, hay, needle) => hay.toLowerCase().includes(needle.toLowerCase())
    },
    matches: {
      args: ["str", "str"],
      result: "bool",
      impl: (_e, text, pattern) => new RegExp(pattern).test(text)
    }
  };
  var VALID_NAMES = [
    ...Object.keys(FIELD_TYPES).sort(),
    ...Object.keys(FUNCTIONS).sort()
  ];
  var WS = /^\s+/;
  var NUM = /^\d+(?:\.\d+)?/;
  var STR = /^"(?:[^"\\]|\\.)*"/;
  var IDENT = /^[A-Za-z_][A-Za-z0-9_]*/;
  var OP = /^(?:&&|\|\||==|!=|<=|>=|[<>!(),])/;
  function lex(source) {
    const out = [];
    let i = 0;
    while (i < source.length) {
      const rest = source.slice(i);
      let m;
      if (m = rest.match(WS)) {
        i += m[0].length;
        continue;
      }
      if (m = rest.match(NUM)) out.push({ kind: "num", text: m[0], pos: i });
      else if (m = rest.match(STR)) out.push({ kind: "str", text: m[0], pos: i });
      else if (m = rest.match(IDENT)) out.push({ kind: "ident", text: m[0], pos: i });
      else if (m = rest.match(OP)) out.push({ kind: "op", text: m[0], pos: i });
      else throw new QueryError("syntax", `unexpected character ${JSON.stringify(source[i])}`, i);
      i += m[0].length;
    }
    out.push({ kind: "eof", text: "", pos: source.length });
    return out;
  }
  function unescape(text) {
    const body = text.slice(1, -1);
    return body.replace(/\\(.)/g, (_, c) => {
      if (c === "n") return "\n";
      if (c === "t") return "	";
      if (c === "r") return "\r";
      return c;
    });
  }
  var Parser = class {
    constructor(source) {
      this.i = 0;
      this.lexemes = lex(source);
    }
    get cur() {
      return this.lexemes[this.i];
    }
    curIsOp(text) {
      const lexeme = this.lexemes[this.i];
      return lexeme.kind === "op" && lexeme.text === text;
    }
    eat(kind, text) {
      const lexeme = this.cur;
      if (lexeme.kind !== kind || text !== void 0 && lexeme.text !== text) {
        const want = text ?? kind;
        throw new QueryError(
          "syntax",
          `expected '${want}', got '${lexeme.text || "end"}'`,
          lexeme.pos
        );
      }
      this.i++;
      return lexeme;
    }
    parse() {
      const node = this.or();
      if (this.cur.kind !== "eof") {
        throw new QueryError("syntax", `unexpected '${this.cur.text}'`, this.cur.pos);
      }
      return node;
    }
    or() {
      const first = this.and();
      const items = [first];
      while (this.cur.kind === "op" && this.cur.text === "||") {
        this.eat("op", "||");
        items.push(this.and());
      }
      return items.length === 1 ? first : { t: "bool-op", pos: first.pos, op: "||", items };
    }
    and() {
      const first = this.cmp();
      const items = [first];
      while (this.cur.kind === "op" && this.cur.text === "&&") {
        this.eat("op", "&&");
        items.push(this.cmp());
      }
      return items.length === 1 ? first : { t: "bool-op", pos: first.pos, op: "&&", items };
    }
    cmp() {
      const left = this.term();
      if (this.cur.kind === "op" && ["==", "!=", "<", "<=", ">", ">="].includes(this.cur.text)) {
        const op = this.eat("op");
        const right = this.term();
        return { t: "cmp", pos: op.pos, op: op.text, left, right };
      }
      return left;
    }
    term() {
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
          const args = [];
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
  };
  var ORDERED_OPS = /* @__PURE__ */ new Set(["<", "<=", ">", ">="]);
  function check(node) {
    switch (node.t) {
      case "lit":
        return node.type;
      case "ident": {
        const type = FIELD_TYPES[node.name];
        if (!type) {
          throw new QueryError(
            "name",
            `unknown name '${node.name}'; valid fields: ${VALID_NAMES.join(", ")}`,
            node.pos
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
            node.pos
          );
        }
        if (node.args.length !== fn.args.length) {
          throw new QueryError(
            "type",
            `${node.name}() takes ${fn.args.length} argument(s), got ${node.args.length}`,
            node.pos
          );
        }
        node.args.forEach((arg, i) => {
          const actual = check(arg);
          if (actual !== fn.args[i]) {
            throw new QueryError(
              "type",
              `${node.name}() argument must be ${fn.args[i]}, got ${actual}`,
              arg.pos
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
  function compileNode(node) {
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
          case "==":
            return (e) => left(e) === right(e);
          case "!=":
            return (e) => left(e) !== right(e);
          case "<":
            return (e) => left(e) < right(e);
          case "<=":
            return (e) => left(e) <= right(e);
          case ">":
            return (e) => left(e) > right(e);
          default:
            return (e) => left(e) >= right(e);
        }
      }
      case "bool-op": {
        const itemFns = node.items.map(compileNode);
        if (node.op === "&&") return (e) => itemFns.every((f) => f(e));
        return (e) => itemFns.some((f) => f(e));
      }
    }
  }
  function compileExpression(source) {
    const node = new Parser(source).parse();
    if (check(node) !== "bool") {
      throw new QueryError("type", "expression must evaluate to a boolean", node.pos);
    }
    const fn = compileNode(node);
    return (e) => !!fn(e);
  }

  // src/tokens.ts
  function parsePath(token) {
    return token.split(".").map((part) => parseInt(part, 10));
  }
  function parentToken(token) {
    const cut = token.lastIndexOf(".");
    return cut === -1 ? null : token.slice(0, cut);
  }
  function comparePaths(a, b) {
    const n = Math.min(a.length, b.length);
    for (let i = 0; i < n; i++) {
      if (a[i] !== b[i]) return a[i] - b[i];
    }
    return a.length - b.length;
  }
  function compareTokens(a, b) {
    return comparePaths(parsePath(a), parsePath(b));
  }
  function isAncestor(a, b) {
    return b.length > a.length && b.startsWith(a + ".");
  }
  function sortTokens(tokens) {
    return [...tokens].sort(compareTokens);
  }

  // src/model.ts
  var RELATION_IDS = [
    "declares",
    "inheritsFrom",
    "typeOf",
    "returns",
    "dependsOn"
  ];
  var KIND_RANK = {
    solution: 0,
    project: 1,
    package: 2,
    namespace: 2,
    type: 3,
    field: 4,
    method: 4,
    property: 4,
    event: 4
  };
  var ALL_KINDS = Object.keys(KIND_RANK);
  function parseGraphDocument(doc) {
    if (!doc || doc.schemaVersion !== "codecarta-graph/1") {
      throw new Error(`unsupported graph document: ${doc?.schemaVersion}`);
    }
    const entities = /* @__PURE__ */ new Map();
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
        extra: raw.extra ?? {}
      });
    }
    const tokens = sortTokens(entities.keys());
    const relations = {};
    for (const relation of RELATION_IDS) {
      relations[relation] = doc.relations?.[relation] ?? [];
    }
    const childrenOf = /* @__PURE__ */ new Map();
    const parentOf = /* @__PURE__ */ new Map();
    for (const [src, dst] of relations.declares) {
      let kids = childrenOf.get(src);
      if (!kids) childrenOf.set(src, kids = []);
      kids.push(dst);
      parentOf.set(dst, src);
    }
    for (const kids of childrenOf.values()) kids.sort(compareTokens);
    return { schemaVersion: doc.schemaVersion, entities, tokens, relations, childrenOf, parentOf };
  }
  function solutionRoots(graph) {
    return graph.tokens.filter(
      (t) => parentToken(t) === null && graph.entities.get(t).kind === "solution"
    );
  }

  // src/view.ts
  function defaultView(graph) {
    return {
      expanded: new Set(solutionRoots(graph)),
      removed: /* @__PURE__ */ new Set(),
      highlighted: null,
      enabledKinds: new Set(ALL_KINDS.filter((k) => k !== "package")),
      enabledRelations: /* @__PURE__ */ new Set(["declares"])
    };
  }
  function cloneView(vs) {
    return {
      expanded: new Set(vs.expanded),
      removed: new Set(vs.removed),
      highlighted: vs.highlighted === null ? null : new Set(vs.highlighted),
      enabledKinds: new Set(vs.enabledKinds),
      enabledRelations: new Set(vs.enabledRelations)
    };
  }
  function isVisible(graph, vs, token) {
    const entity = graph.entities.get(token);
    if (!entity || vs.removed.has(token)) return false;
    if (!vs.enabledKinds.has(entity.kind)) return false;
    let ancestor = parentToken(token);
    while (ancestor !== null) {
      if (!vs.expanded.has(ancestor) || vs.removed.has(ancestor)) return false;
      ancestor = parentToken(ancestor);
    }
    return true;
  }
  function visibleSet(graph, vs) {
    const out = /* @__PURE__ */ new Set();
    for (const token of graph.tokens) {
      if (isVisible(graph, vs, token)) out.add(token);
    }
    return out;
  }
  function toggleExpand(graph, vs, token) {
    if (!isVisible(graph, vs, token)) {
      throw new Error(`cannot toggle hidden or unknown token ${token}`);
    }
    const out = cloneView(vs);
    if (out.expanded.has(token)) out.expanded.delete(token);
    else out.expanded.add(token);
    return out;
  }
  function removeNode(graph, vs, token) {
    if (!isVisible(graph, vs, token)) {
      throw new Error(`cannot remove hidden or unknown token ${token}`);
    }
    const out = cloneView(vs);
    out.removed.add(token);
    return out;
  }
  function refresh(graph, vs) {
    const out = cloneView(vs);
    out.expanded = new Set([...out.expanded].filter((t) => graph.entities.has(t)));
    out.removed = /* @__PURE__ */ new Set();
    out.highlighted = null;
    return out;
  }

  // src/filters.ts
  function compileQuery(query) {
    if (!query.source) throw new QueryError("syntax", "query source must be non-empty", 0);
    let fn;
    if (query.mode === "full-text") {
      const needle = query.source.toLowerCase();
      fn = (e) => e.name.toLowerCase().includes(needle);
    } else if (query.mode === "regex") {
      let pattern;
      try {
        pattern = new RegExp(query.source);
      } catch (exc) {
        throw new QueryError("pattern", String(exc.message), 0);
      }
      fn = (e) => pattern.test(e.name);
    } else {
      fn = compileExpression(query.source);
    }
    const predicate = { query, fn, runtimeErrors: [] };
    const seen = /* @__PURE__ */ new Set();
    const inner = predicate.fn;
    predicate.fn = (e) => {
      try {
        return inner(e);
      } catch (exc) {
        const message = String(exc);
        if (!seen.has(message)) {
          seen.add(message);
          predicate.runtimeErrors.push(message);
        }
        return false;
      }
    };
    return predicate;
  }
  function evaluate(predicate, graph, scope) {
    const out = /* @__PURE__ */ new Set();
    for (const token of scope) {
      const entity = graph.entities.get(token);
      if (entity && predicate.fn(entity)) out.add(token);
    }
    return out;
  }
  function applyAction(graph, matches, action, vs) {
    const visible = visibleSet(graph, vs);
    const kept = new Set([...matches].filter((t) => visible.has(t)));
    if (action === "highlight") {
      const out2 = cloneView(vs);
      out2.highlighted = kept;
      return out2;
    }
    const keep = new Set(kept);
    for (const token of kept) {
      for (const other of visible) {
        if (isAncestor(other, token)) keep.add(other);
      }
    }
    const newlyRemoved = [...visible].filter((t) => !keep.has(t));
    if (newlyRemoved.length === 0) return vs;
    const out = cloneView(vs);
    for (const token of newlyRemoved) out.removed.add(token);
    return out;
  }
  var PREDEFINED_FILTERS = [
    { name: "has-errors", description: "Entities with error diagnostics", param: null, template: "hasErrors" },
    { name: "has-warnings", description: "Entities with warning diagnostics", param: null, template: "hasWarnings" },
    { name: "documented", description: "Entities with a doc comment", param: null, template: "hasDoc" },
    { name: "undocumented-public", description: "Public API without doc comments", param: null, template: 'accessibility == "public" && !hasDoc' },
    { name: "large-types", description: "Types with more than N members", param: "num", template: 'kind == "type" && memberCount > {arg}' },
    { name: "static-members", description: "Static members", param: null, template: 'isStatic && (kind == "method" || kind == "field" || kind == "property" || kind == "event")' },
    { name: "doc-mentions", description: "Doc comments containing a keyword", param: "str", template: "docContains({arg})" }
  ];
  function instantiatePredefined(entry, arg) {
    if (entry.param === null) return { mode: "expression", source: entry.template };
    if (arg === null || arg === "") {
      throw new QueryError("syntax", `${entry.name} needs a ${entry.param} argument`, 0);
    }
    const rendered = entry.param === "num" ? arg : '"' + arg.replace(/\\/g, "\\\\").replace(/"/g, '\\"') + '"';
    return { mode: "expression", source: entry.template.replace("{arg}", rendered) };
  }

  // src/glyphs.ts
  var DEFAULT_BASE_RADIUS = {
    solution: 16,
    project: 14,
    package: 12,
    namespace: 10,
    type: 10,
    field: 5,
    method: 5,
    property: 5,
    event: 5
  };
  var DEFAULT_MEMBER_WEIGHT = 0.5;
  var OUTLINE_SATURATIONS = [0.9, 0.6, 0.3];
  var KIND_TINTS = {
    solution: "#9059c8",
    project: "#3f74d9",
    package: "#8a6d4b",
    namespace: "#6e8296",
    type: "#e8b931",
    field: "#5a87b0",
    method: "#7e57c2",
    property: "#4c9e73",
    event: "#d98f29"
  };
  var TYPE_KIND_TINTS = {
    class: "#e8b931",
    struct: "#38a8c8",
    enum: "#d9703f",
    interface: "#55b065",
    delegate: "#b45fb4"
  };
  var ACCESSIBILITY_ICONS = {
    public: null,
    internal: "shield",
    protected: "key",
    protectedInternal: "key-shield",
    privateProtected: "key-lock",
    private: "lock"
  };
  function defaultGlyphConfig() {
    return {
      baseRadius: { ...DEFAULT_BASE_RADIUS },
      memberWeight: DEFAULT_MEMBER_WEIGHT,
      scalingMode: "linear"
    };
  }
  function scale(value, mode) {
    if (mode === "linear") return value;
    if (mode === "log") return Math.log1p(value);
    return Math.sqrt(value);
  }
  function nodeRadius(e, cfg) {
    let base = cfg.baseRadius[e.kind];
    if (e.kind === "type") {
      base = base + cfg.memberWeight * (e.instanceMemberCount + e.staticMemberCount);
    }
    return scale(base, cfg.scalingMode);
  }
  function outlineWidth(memberCount) {
    if (memberCount <= 0) return 0;
    return Math.min(Math.max(memberCount / 5, 0.2), 4);
  }
  function iconFor(e) {
    if (e.kind === "type" && e.typeKind) return e.typeKind;
    return e.kind;
  }
  function tintFor(e) {
    if (e.kind === "type" && e.typeKind) return TYPE_KIND_TINTS[e.typeKind];
    return KIND_TINTS[e.kind];
  }
  function effectFor(e) {
    if (e.diagnostics.some((d) => d.severity === "error")) return "fire";
    if (e.diagnostics.some((d) => d.severity === "warning")) return "smoke";
    return "none";
  }
  function glyphFor(e, cfg) {
    const [innerSat, middleSat, outerSat] = OUTLINE_SATURATIONS;
    const corner = e.accessibility !== void 0 && e.accessibility !== null ? ACCESSIBILITY_ICONS[e.accessibility] : null;
    const middleWidth = e.kind === "type" ? outlineWidth(e.instanceMemberCount) : 0;
    const outerWidth = e.kind === "type" ? outlineWidth(e.staticMemberCount) : 0;
    return {
      iconId: iconFor(e),
      tint: tintFor(e),
      cornerIconId: corner,
      innerOutline: { style: e.isStatic ? "dashed" : "solid", width: 1, saturation: innerSat },
      middleOutline: { style: "solid", width: middleWidth, saturation: middleSat },
      outerOutline: { style: "dashed", width: outerWidth, saturation: outerSat },
      radius: nodeRadius(e, cfg),
      effect: effectFor(e)
    };
  }
  var DEFAULT_EDGE_STYLES = {
    declares: { relationId: "declares", color: "#999999", lineWeight: 1, enabled: true },
    inheritsFrom: { relationId: "inheritsFrom", color: "#2d9ca8", lineWeight: 1.5, enabled: false },
    typeOf: { relationId: "typeOf", color: "#d98324", lineWeight: 1.25, enabled: false },
    returns: { relationId: "returns", color: "#8e44ad", lineWeight: 0.75, enabled: false },
    dependsOn: { relationId: "dependsOn", color: "#c0392b", lineWeight: 2, enabled: false }
  };
  function parseStyleDocument(doc) {
    const glyphs = defaultGlyphConfig();
    if (doc?.baseRadius) {
      for (const kind of Object.keys(doc.baseRadius)) {
        glyphs.baseRadius[kind] = doc.baseRadius[kind];
      }
    }
    if (typeof doc?.memberWeight === "number") glyphs.memberWeight = doc.memberWeight;
    if (doc?.scalingMode) glyphs.scalingMode = doc.scalingMode;
    const edgeStyles = {};
    for (const relation of RELATION_IDS) {
      const base = { ...DEFAULT_EDGE_STYLES[relation] };
      const override = doc?.relationStyles?.[relation];
      if (override) {
        if (override.color !== void 0) base.color = override.color;
        if (override.lineWeight !== void 0) base.lineWeight = override.lineWeight;
        if (override.enabled !== void 0) base.enabled = override.enabled;
      }
      edgeStyles[relation] = base;
    }
    return { glyphs, edgeStyles };
  }

  // src/detmath.ts
  var TAU = 6.283185307179586;
  var HALF_PI = 1.5707963267948966;
  var S1 = -1 / 6;
  var S2 = 1 / 120;
  var S3 = -1 / 5040;
  var S4 = 1 / 362880;
  var S5 = -1 / 39916800;
  var S6 = 1 / 6227020800;
  var C1 = -1 / 2;
  var C2 = 1 / 24;
  var C3 = -1 / 720;
  var C4 = 1 / 40320;
  var C5 = -1 / 3628800;
  var C6 = 1 / 479001600;
  function sinKernel(r) {
    const z = r * r;
    return r * (1 + z * (S1 + z * (S2 + z * (S3 + z * (S4 + z * (S5 + z * S6))))));
  }
  function cosKernel(r) {
    const z = r * r;
    return 1 + z * (C1 + z * (C2 + z * (C3 + z * (C4 + z * (C5 + z * C6)))));
  }
  function reduce(x) {
    const k = Math.floor(x / HALF_PI + 0.5);
    const quadrant = (k % 4 + 4) % 4;
    return { quadrant, r: x - k * HALF_PI };
  }
  function detSin(x) {
    const { quadrant, r } = reduce(x);
    if (quadrant === 0) return sinKernel(r);
    if (quadrant === 1) return cosKernel(r);
    if (quadrant === 2) return -sinKernel(r);
    return -cosKernel(r);
  }
  function detCos(x) {
    const { quadrant, r } = reduce(x);
    if (quadrant === 0) return cosKernel(r);
    if (quadrant === 1) return -sinKernel(r);
    if (quadrant === 2) return -cosKernel(r);
    return sinKernel(r);
  }
  function hash32(...values) {
    let h = 2654435769;
    for (const value of values) {
      h = h + (value >>> 0) >>> 0;
      h = (h ^ h >>> 16) >>> 0;
      h = Math.imul(h, 2246822507) >>> 0;
      h = (h ^ h >>> 13) >>> 0;
      h = Math.imul(h, 3266489909) >>> 0;
      h = (h ^ h >>> 16) >>> 0;
    }
    return h;
  }
  function unitInterval(h) {
    return h / 4294967296;
  }

  // src/fa2.ts
  var MAX_DEPTH = 40;
  var TOLERANCE = 1;
  function fa2Step(px, py, pfx, pfy, mass, size, pinned, edgeSrc, edgeDst, repulsion, gravity, gravityX, gravityY, theta, adjustSizes, maxDisplacement, prevSpeed, prevEfficiency) {
    const n = px.length;
    const fx = new Float64Array(n);
    const fy = new Float64Array(n);
    if (n > 1) {
      const cap = 4 * n + 64;
      const cellCx = new Float64Array(cap);
      const cellCy = new Float64Array(cap);
      const cellHalf = new Float64Array(cap);
      const cellMass = new Float64Array(cap);
      const cellComx = new Float64Array(cap);
      const cellComy = new Float64Array(cap);
      const cellChild = new Int32Array(cap * 4).fill(-1);
      const cellHead = new Int32Array(cap).fill(-1);
      const cellLeaf = new Uint8Array(cap).fill(1);
      const pointNext = new Int32Array(n).fill(-1);
      let minx = px[0], maxx = px[0], miny = py[0], maxy = py[0];
      for (let i = 1; i < n; i++) {
        if (px[i] < minx) minx = px[i];
        if (px[i] > maxx) maxx = px[i];
        if (py[i] < miny) miny = py[i];
        if (py[i] > maxy) maxy = py[i];
      }
      let side = maxx - minx;
      if (maxy - miny > side) side = maxy - miny;
      if (side <= 0) side = 1;
      const half = side * 0.5 + side * 1e-9 + 1e-12;
      let nCells = 1;
      cellCx[0] = (minx + maxx) * 0.5;
      cellCy[0] = (miny + maxy) * 0.5;
      cellHalf[0] = half;
      for (let i = 0; i < n; i++) {
        let c = 0;
        let depthCount = 0;
        for (; ; ) {
          cellMass[c] += mass[i];
          cellComx[c] += mass[i] * px[i];
          cellComy[c] += mass[i] * py[i];
          if (cellLeaf[c] === 1) {
            if (cellHead[c] === -1) {
              cellHead[c] = i;
              break;
            }
            if (depthCount >= MAX_DEPTH || nCells + 4 > cap) {
              pointNext[i] = cellHead[c];
              cellHead[c] = i;
              break;
            }
            const base = nCells;
            nCells += 4;
            const quarter = cellHalf[c] * 0.5;
            for (let q2 = 0; q2 < 4; q2++) {
              const child = base + q2;
              const ox = (q2 & 1) === 1 ? quarter : -quarter;
              const oy = (q2 & 2) === 2 ? quarter : -quarter;
              cellCx[child] = cellCx[c] + ox;
              cellCy[child] = cellCy[c] + oy;
              cellHalf[child] = quarter;
              cellChild[c * 4 + q2] = child;
            }
            cellLeaf[c] = 0;
            let j = cellHead[c];
            cellHead[c] = -1;
            while (j !== -1) {
              const nxt = pointNext[j];
              const q2 = (px[j] >= cellCx[c] ? 1 : 0) + (py[j] >= cellCy[c] ? 2 : 0);
              const child = cellChild[c * 4 + q2];
              pointNext[j] = cellHead[child];
              cellHead[child] = j;
              cellMass[child] += mass[j];
              cellComx[child] += mass[j] * px[j];
              cellComy[child] += mass[j] * py[j];
              j = nxt;
            }
          }
          const q = (px[i] >= cellCx[c] ? 1 : 0) + (py[i] >= cellCy[c] ? 2 : 0);
          c = cellChild[c * 4 + q];
          depthCount += 1;
        }
      }
      const stack = new Int32Array(cap);
      const theta2 = theta * theta;
      for (let i = 0; i < n; i++) {
        stack[0] = 0;
        let top = 1;
        while (top > 0) {
          top -= 1;
          const c = stack[top];
          if (cellMass[c] <= 0) continue;
          if (cellLeaf[c] === 1) {
            let j = cellHead[c];
            while (j !== -1) {
              if (j !== i) {
                let dx = px[i] - px[j];
                let dy = py[i] - py[j];
                let d2 = dx * dx + dy * dy;
                if (d2 <= 0) {
                  dx = 1e-9 * (i % 8 + 1);
                  dy = 1e-9 * (j % 8 + 1);
                  d2 = dx * dx + dy * dy;
                }
                let coef;
                if (adjustSizes) {
                  const d = Math.sqrt(d2);
                  const gap = d - size[i] - size[j];
                  if (gap > 0) coef = repulsion * mass[i] * mass[j] / gap / d;
                  else if (gap < 0) coef = 100 * repulsion * mass[i] * mass[j];
                  else coef = 0;
                } else {
                  coef = repulsion * mass[i] * mass[j] / d2;
                }
                fx[i] += dx * coef;
                fy[i] += dy * coef;
              }
              j = pointNext[j];
            }
          } else {
            const comx = cellComx[c] / cellMass[c];
            const comy = cellComy[c] / cellMass[c];
            const dx = px[i] - comx;
            const dy = py[i] - comy;
            const d2 = dx * dx + dy * dy;
            const width = cellHalf[c] * 2;
            if (width * width < theta2 * d2) {
              const coef = repulsion * mass[i] * cellMass[c] / d2;
              fx[i] += dx * coef;
              fy[i] += dy * coef;
            } else {
              for (let q = 0; q < 4; q++) {
                const child = cellChild[c * 4 + q];
                if (child !== -1) {
                  stack[top] = child;
                  top += 1;
                }
              }
            }
          }
        }
      }
    }
    const m = edgeSrc.length;
    for (let e = 0; e < m; e++) {
      const s = edgeSrc[e];
      const t = edgeDst[e];
      const dx = px[s] - px[t];
      const dy = py[s] - py[t];
      if (adjustSizes) {
        const d2 = dx * dx + dy * dy;
        if (d2 > 0) {
          const d = Math.sqrt(d2);
          const gap = d - size[s] - size[t];
          if (gap > 0) {
            const factor = -gap / d;
            fx[s] += dx * factor;
            fy[s] += dy * factor;
            fx[t] -= dx * factor;
            fy[t] -= dy * factor;
          }
        }
      } else {
        fx[s] -= dx;
        fy[s] -= dy;
        fx[t] += dx;
        fy[t] += dy;
      }
    }
    for (let i = 0; i < n; i++) {
      const dx = gravityX - px[i];
      const dy = gravityY - py[i];
      const d = Math.sqrt(dx * dx + dy * dy);
      if (d > 0) {
        const coef = gravity * mass[i] / d;
        fx[i] += dx * coef;
        fy[i] += dy * coef;
      }
    }
    let globalSwing = 0;
    let globalTraction = 0;
    let nFree = 0;
    for (let i = 0; i < n; i++) {
      if (pinned[i]) continue;
      nFree += 1;
      const swx = fx[i] - pfx[i];
      const swy = fy[i] - pfy[i];
      const swing = Math.sqrt(swx * swx + swy * swy);
      const trx = fx[i] + pfx[i];
      const tryy = fy[i] + pfy[i];
      const traction = 0.5 * Math.sqrt(trx * trx + tryy * tryy);
      globalSwing += mass[i] * swing;
      globalTraction += mass[i] * traction;
    }
    if (globalTraction < 1e-18) globalTraction = 1e-18;
    if (globalSwing < 0.1 * globalTraction) globalSwing = 0.1 * globalTraction;
    if (globalSwing < 1e-18) globalSwing = 1e-18;
    let efficiency = prevEfficiency;
    const freeCount = Math.max(nFree, 1);
    const estimatedJt = 0.05 * Math.sqrt(freeCount);
    const minJt = Math.sqrt(estimatedJt);
    const maxJt = 10;
    let jtMid = estimatedJt * globalTraction / (freeCount * freeCount);
    if (jtMid < minJt) jtMid = minJt;
    if (jtMid > maxJt) jtMid = maxJt;
    let jt = TOLERANCE * jtMid;
    const minEfficiency = 0.05;
    if (globalSwing / globalTraction > 2) {
      if (efficiency > minEfficiency) efficiency *= 0.5;
      if (jt < TOLERANCE) jt = TOLERANCE;
    }
    const targetSpeed = jt * efficiency * globalTraction / globalSwing;
    if (globalSwing > jt * globalTraction) {
      if (efficiency > minEfficiency) efficiency *= 0.7;
      else if (prevSpeed < 1e3) efficiency *= 1.3;
    }
    if (efficiency > 1) efficiency = 1;
    let rise = targetSpeed - prevSpeed;
    if (rise > 0.5 * prevSpeed) rise = 0.5 * prevSpeed;
    let globalSpeed = prevSpeed + rise;
    if (globalSpeed < 1e-6) globalSpeed = 1e-6;
    let totalSwing = 0;
    let sumDisp = 0;
    let moved = 0;
    for (let i = 0; i < n; i++) {
      if (pinned[i]) {
        pfx[i] = fx[i];
        pfy[i] = fy[i];
        continue;
      }
      const swx = fx[i] - pfx[i];
      const swy = fy[i] - pfy[i];
      const swing = Math.sqrt(swx * swx + swy * swy);
      totalSwing += swing;
      const localSpeed = globalSpeed / (1 + Math.sqrt(globalSpeed * swing));
      let dx = fx[i] * localSpeed;
      let dy = fy[i] * localSpeed;
      let disp = Math.sqrt(dx * dx + dy * dy);
      if (disp > maxDisplacement) {
        const ratio = maxDisplacement / disp;
        dx *= ratio;
        dy *= ratio;
        disp = maxDisplacement;
      }
      px[i] += dx;
      py[i] += dy;
      sumDisp += disp;
      moved += 1;
      pfx[i] = fx[i];
      pfy[i] = fy[i];
    }
    return {
      globalSpeed,
      efficiency,
      meanDisp: moved > 0 ? sumDisp / moved : 0,
      totalSwing,
      globalSwing,
      globalTraction
    };
  }

  // src/tidytree.ts
  function tidyTreeLayout(roots, children, ringSpacing, rotation = 0) {
    const sortedRoots = [...roots].sort(compareTokens);
    const ordered = /* @__PURE__ */ new Map();
    const seen = new Set(sortedRoots);
    const stack = [...sortedRoots];
    const order = [];
    while (stack.length) {
      const node = stack.pop();
      order.push(node);
      const kids = [...children.get(node) ?? []].sort(compareTokens);
      ordered.set(node, kids);
      for (const kid of kids) {
        if (seen.has(kid)) throw new Error(`${kid} has multiple parents or forms a cycle`);
        seen.add(kid);
        stack.push(kid);
      }
    }
    const leafCount = /* @__PURE__ */ new Map();
    for (let i = order.length - 1; i >= 0; i--) {
      const node = order[i];
      const kids = ordered.get(node);
      leafCount.set(
        node,
        kids.length ? kids.reduce((acc, k) => acc + leafCount.get(k), 0) : 1
      );
    }
    const totalLeaves = sortedRoots.reduce((acc, r) => acc + leafCount.get(r), 0);
    const positions = /* @__PURE__ */ new Map();
    if (totalLeaves === 0) return positions;
    const slot = TAU / totalLeaves;
    const angles = /* @__PURE__ */ new Map();
    let nextSlot = 0;
    const walk = [];
    for (let i = sortedRoots.length - 1; i >= 0; i--) walk.push([sortedRoots[i], 0, false]);
    while (walk.length) {
      const [node, depth, childrenDone] = walk.pop();
      const kids = ordered.get(node);
      if (kids.length && !childrenDone) {
        walk.push([node, depth, true]);
        for (let i = kids.length - 1; i >= 0; i--) walk.push([kids[i], depth + 1, false]);
        continue;
      }
      if (!kids.length) {
        angles.set(node, rotation + (nextSlot + 0.5) * slot);
        nextSlot += 1;
      } else {
        angles.set(node, (angles.get(kids[0]) + angles.get(kids[kids.length - 1])) / 2);
      }
      const radius = depth * ringSpacing;
      if (radius === 0) positions.set(node, [0, 0]);
      else {
        const theta = angles.get(node);
        positions.set(node, [radius * detCos(theta), radius * detSin(theta)]);
      }
    }
    return positions;
  }

  // src/layout.ts
  function defaultLayoutConfig() {
    return {
      ringSpacing: 60,
      minAngularGap: 0.5,
      forces: {
        repulsionStrength: 2,
        gravity: 0.05,
        edgeWeightInfluence: 1,
        adjustSizes: false,
        thetaApprox: 0.7
      },
      maxIterations: 2e3,
      convergenceThreshold: 0.1
    };
  }
  var STALL_WINDOW = 25;
  var STALL_COOLING = 0.5;
  var STALL_IMPROVEMENT = 0.995;
  function buildLayoutGraph(graph, vs, sizes) {
    const visible = sortTokens(visibleSet(graph, vs));
    const index = new Map(visible.map((t, i) => [t, i]));
    const pairKeys = /* @__PURE__ */ new Set();
    const pairs = [];
    const relations = [...vs.enabledRelations].sort();
    for (const relation of relations) {
      for (const [src, dst] of graph.relations[relation] ?? []) {
        const si = index.get(src);
        const di = index.get(dst);
        if (si === void 0 || di === void 0 || si === di) continue;
        const a = si < di ? si : di;
        const b = si < di ? di : si;
        const key = a * visible.length + b;
        if (!pairKeys.has(key)) {
          pairKeys.add(key);
          pairs.push([a, b]);
        }
      }
    }
    pairs.sort((p, q) => p[0] - q[0] || p[1] - q[1]);
    const sizeArr = new Float64Array(visible.length);
    if (sizes) visible.forEach((t, i) => sizeArr[i] = sizes.get(t) ?? 0);
    return { tokens: visible, index, edges: pairs, sizes: sizeArr };
  }
  function visibleForest(graph, visible) {
    const visibleSetLocal = new Set(visible);
    const parent = /* @__PURE__ */ new Map();
    const children = /* @__PURE__ */ new Map();
    for (const token of visibleSetLocal) {
      let ancestor = parentToken(token);
      while (ancestor !== null && !visibleSetLocal.has(ancestor)) {
        ancestor = parentToken(ancestor);
      }
      if (ancestor !== null) {
        parent.set(token, ancestor);
        let kids = children.get(ancestor);
        if (!kids) children.set(ancestor, kids = []);
        kids.push(token);
      }
    }
    const roots = [];
    const detached = [];
    for (const token of sortTokens(visibleSetLocal)) {
      if (parent.has(token)) continue;
      if (children.has(token) || graph.entities.get(token).kind === "solution") {
        roots.push(token);
      } else {
        detached.push(token);
      }
    }
    for (const kids of children.values()) kids.sort(compareTokens);
    return { roots, children, detached };
  }
  function seedPositions(graph, vs, cfg, seed, warm) {
    const visible = sortTokens(visibleSet(graph, vs));
    const { roots, children, detached } = visibleForest(graph, visible);
    const positions = /* @__PURE__ */ new Map();
    const treePositions = tidyTreeLayout(roots, children, cfg.ringSpacing);
    const depthOf = /* @__PURE__ */ new Map();
    let maxDepth = 0;
    const stack = roots.map((r) => [r, 0]);
    while (stack.length) {
      const [node, d] = stack.pop();
      depthOf.set(node, d);
      if (d > maxDepth) maxDepth = d;
      for (const kid of children.get(node) ?? []) stack.push([kid, d + 1]);
    }
    const outerRadius = (maxDepth + 1) * cfg.ringSpacing;
    const rotation = unitInterval(hash32(seed)) * TAU;
    if (!warm) {
      for (const [token, point] of treePositions) positions.set(token, point);
      detached.forEach((token, k) => {
        const angle = rotation + TAU * k / Math.max(1, detached.length);
        positions.set(token, [outerRadius * detCos(angle), outerRadius * detSin(angle)]);
      });
      return positions;
    }
    for (const token of visible) {
      const kept = warm.get(token);
      if (kept) positions.set(token, kept);
    }
    for (const token of sortTokens(treePositions.keys())) {
      if (positions.has(token)) continue;
      let ancestor = parentToken(token);
      let anchor;
      while (ancestor !== null) {
        anchor = positions.get(ancestor);
        if (anchor) break;
        ancestor = parentToken(ancestor);
      }
      if (!anchor) {
        positions.set(token, treePositions.get(token));
      } else {
        const angle = unitInterval(hash32(seed, ...parsePath(token))) * TAU;
        const r = cfg.ringSpacing * 0.25;
        positions.set(token, [anchor[0] + r * detCos(angle), anchor[1] + r * detSin(angle)]);
      }
    }
    detached.forEach((token, k) => {
      if (!positions.has(token)) {
        const angle = rotation + TAU * k / Math.max(1, detached.length);
        positions.set(token, [outerRadius * detCos(angle), outerRadius * detSin(angle)]);
      }
    });
    return positions;
  }
  function initState(lg, positions, cfg, seed, pinned = /* @__PURE__ */ new Set(), gravityCenter) {
    const n = lg.tokens.length;
    const px = new Float64Array(n);
    const py = new Float64Array(n);
    lg.tokens.forEach((token, i) => {
      const [x, y] = positions.get(token);
      px[i] = x;
      py[i] = y;
    });
    const seen = /* @__PURE__ */ new Map();
    lg.tokens.forEach((token, i) => {
      const key = `${px[i]},${py[i]}`;
      const bump = seen.get(key) ?? 0;
      seen.set(key, bump + 1);
      if (bump) {
        const angle = unitInterval(hash32(seed, bump, ...parsePath(token))) * TAU;
        const r = cfg.ringSpacing * 1e-3 * bump;
        px[i] += r * detCos(angle);
        py[i] += r * detSin(angle);
      }
    });
    const pinnedArr = new Uint8Array(n);
    lg.tokens.forEach((token, i) => {
      if (pinned.has(token)) pinnedArr[i] = 1;
    });
    let center;
    if (gravityCenter) center = gravityCenter;
    else {
      let cx = 0;
      let cy = 0;
      for (let i = 0; i < n; i++) {
        cx += px[i];
        cy += py[i];
      }
      center = n ? [cx / n, cy / n] : [0, 0];
    }
    const mass = new Float64Array(n).fill(1);
    for (const [s, t] of lg.edges) {
      mass[s] += 1;
      mass[t] += 1;
    }
    const edgeSrc = new Int32Array(lg.edges.length);
    const edgeDst = new Int32Array(lg.edges.length);
    lg.edges.forEach(([s, t], k) => {
      edgeSrc[k] = s;
      edgeDst[k] = t;
    });
    return {
      lg,
      px,
      py,
      pfx: new Float64Array(n),
      pfy: new Float64Array(n),
      mass,
      pinned: pinnedArr,
      edgeSrc,
      edgeDst,
      gravityCenter: center,
      seed,
      config: cfg,
      iteration: 0,
      globalSpeed: 1,
      efficiency: 1,
      bestDisp: Infinity,
      stall: 0,
      efficiencyCap: 1,
      converged: false,
      lastMeanDisp: Infinity
    };
  }
  function stepState(state) {
    const cfg = state.config;
    const result = fa2Step(
      state.px,
      state.py,
      state.pfx,
      state.pfy,
      state.mass,
      state.lg.sizes,
      state.pinned,
      state.edgeSrc,
      state.edgeDst,
      cfg.forces.repulsionStrength,
      cfg.forces.gravity,
      state.gravityCenter[0],
      state.gravityCenter[1],
      cfg.forces.thetaApprox,
      cfg.forces.adjustSizes,
      cfg.ringSpacing * 0.5,
      state.globalSpeed,
      state.efficiency
    );
    if (result.meanDisp < state.bestDisp * STALL_IMPROVEMENT) {
      state.bestDisp = result.meanDisp;
      state.stall = 0;
    } else if (result.globalSwing > 0.2 * result.globalTraction || state.efficiencyCap < 1) {
      state.stall += 1;
      if (state.stall >= STALL_WINDOW) {
        state.efficiencyCap = Math.min(state.efficiencyCap, result.efficiency) * STALL_COOLING;
        state.stall = 0;
      }
    }
    state.globalSpeed = result.globalSpeed;
    state.efficiency = Math.min(result.efficiency, state.efficiencyCap);
    state.iteration += 1;
    state.lastMeanDisp = result.meanDisp;
    state.converged = result.meanDisp <= cfg.convergenceThreshold;
  }
  function statePositions(state) {
    const out = /* @__PURE__ */ new Map();
    state.lg.tokens.forEach((token, i) => out.set(token, [state.px[i], state.py[i]]));
    return out;
  }

  // src/icons.ts
  var ICON_PATHS = {
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
    badge: { path: "M8 1 L15 14 L1 14 Z M7 6 L9 6 L8.6 10 L7.4 10 Z M7.4 11.5 L8.6 11.5 L8.6 12.8 L7.4 12.8 Z" }
  };
  var cache = /* @__PURE__ */ new Map();
  function iconPath(id) {
    const spec = ICON_PATHS[id];
    if (!spec) return null;
    let path = cache.get(id);
    if (!path) {
      path = new Path2D(spec.path);
      cache.set(id, path);
    }
    return path;
  }
  function iconFilled(id) {
    return ICON_PATHS[id]?.fill !== false;
  }
  var LEGEND = [
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
    ["shield", "internal (corner icon)"]
  ];

  // src/render.ts
  function worldToScreen(camera, canvas, x, y) {
    return [
      canvas.width / 2 + (x - camera.x) * camera.zoom,
      canvas.height / 2 + (y - camera.y) * camera.zoom
    ];
  }
  function screenToWorld(camera, canvas, sx, sy) {
    return [
      (sx - canvas.width / 2) / camera.zoom + camera.x,
      (sy - canvas.height / 2) / camera.zoom + camera.y
    ];
  }
  var GRAY_FILL = "#4a4e55";
  var GRAY_STROKE = "#3a3d43";
  function withAlpha(hex, alpha) {
    const r = parseInt(hex.slice(1, 3), 16);
    const g = parseInt(hex.slice(3, 5), 16);
    const b = parseInt(hex.slice(5, 7), 16);
    return `rgba(${r},${g},${b},${alpha})`;
  }
  function renderScene(ctx, canvas, scene, positions, camera, options) {
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    const live = /* @__PURE__ */ new Map();
    for (const node of scene.nodes) live.set(node.token, node);
    ctx.lineCap = "round";
    for (const edge of scene.edges) {
      const a = positions.get(edge.source);
      const b = positions.get(edge.target);
      if (!a || !b) continue;
      const grayed = (live.get(edge.source)?.grayed ?? false) || (live.get(edge.target)?.grayed ?? false);
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
  function drawNode(ctx, canvas, node, point, camera, options) {
    const [sx, sy] = worldToScreen(camera, canvas, point[0], point[1]);
    const r = Math.max(2.5, node.glyph.radius * camera.zoom);
    if (sx < -r - 40 || sy < -r - 40 || sx > canvas.width + r + 40 || sy > canvas.height + r + 40) {
      return;
    }
    const tint = node.grayed ? GRAY_FILL : node.glyph.tint;
    if (node.glyph.effect !== "none" && !node.grayed) {
      drawEffect(ctx, node, sx, sy, r, options);
    }
    ctx.fillStyle = withAlpha(tint === GRAY_FILL ? GRAY_FILL : node.glyph.tint, node.grayed ? 0.35 : 0.28);
    ctx.beginPath();
    ctx.arc(sx, sy, r, 0, TAU);
    ctx.fill();
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
    const icon = iconPath(node.glyph.iconId) ?? missingIconPlaceholder(node.glyph.iconId);
    if (icon) {
      const scale2 = r * 1.15 / 16;
      ctx.save();
      ctx.translate(sx - 8 * scale2, sy - 8 * scale2);
      ctx.scale(scale2, scale2);
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
    if (node.glyph.cornerIconId) {
      const corner = iconPath(node.glyph.cornerIconId);
      if (corner) {
        const size = Math.max(7, r * 0.8);
        const scale2 = size / 16;
        const cx = sx + r * 0.55;
        const cy = sy + r * 0.55;
        ctx.save();
        ctx.fillStyle = "#14161a";
        ctx.beginPath();
        ctx.arc(cx + size / 2 - 1, cy + size / 2 - 1, size * 0.62, 0, TAU);
        ctx.fill();
        ctx.translate(cx, cy);
        ctx.scale(scale2, scale2);
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
  var warnedIcons = /* @__PURE__ */ new Set();
  function missingIconPlaceholder(iconId) {
    if (!warnedIcons.has(iconId)) {
      warnedIcons.add(iconId);
      console.warn(`codecarta: no glyph icon for ${JSON.stringify(iconId)}; using placeholder`);
    }
    return iconPath("badge");
  }
  function drawEffect(ctx, node, sx, sy, r, options) {
    if (options.reducedMotion) {
      const badge = iconPath("badge");
      if (badge) {
        const size = Math.max(10, r * 0.9);
        const scale2 = size / 16;
        ctx.save();
        ctx.translate(sx - size / 2, sy - r - size - 2);
        ctx.scale(scale2, scale2);
        ctx.fillStyle = node.glyph.effect === "fire" ? "#e74c3c" : "#95a5a6";
        ctx.fill(badge, "evenodd");
        ctx.restore();
      }
      return;
    }
    const seedBase = parsePath(node.token);
    const count = node.glyph.effect === "fire" ? 14 : 8;
    const time = options.clock / 1e3;
    for (let k = 0; k < count; k++) {
      const u = unitInterval(hash32(k, ...seedBase));
      const v = unitInterval(hash32(k + 101, ...seedBase));
      const cycle = (time * (0.35 + 0.4 * v) + u) % 1;
      const rise = cycle * r * (node.glyph.effect === "fire" ? 2.2 : 3);
      const sway = Math.sin((time + u * 7) * (1.5 + v)) * r * 0.25;
      const px = sx + (u - 0.5) * r * 1.1 + sway;
      const py = sy - r * 0.4 - rise;
      const fade = 1 - cycle;
      let color;
      if (node.glyph.effect === "fire") {
        color = cycle < 0.45 ? `rgba(255,${120 + Math.floor(100 * fade)},40,${0.75 * fade})` : `rgba(120,120,120,${0.4 * fade})`;
      } else {
        color = `rgba(150,150,155,${0.4 * fade})`;
      }
      ctx.fillStyle = color;
      ctx.beginPath();
      ctx.arc(px, py, Math.max(1, r * 0.16 * (0.6 + 0.8 * fade)), 0, TAU);
      ctx.fill();
    }
  }

  // src/scene.ts
  function buildScene(graph, vs, positions, style) {
    const visible = visibleSet(graph, vs);
    const highlighted = vs.highlighted;
    const nodes = [];
    for (const token of sortTokens(visible)) {
      const entity = graph.entities.get(token);
      const point = positions.get(token);
      if (!point) continue;
      nodes.push({
        token,
        x: point[0],
        y: point[1],
        grayed: highlighted !== null && !highlighted.has(token),
        glyph: glyphFor(entity, style.glyphs)
      });
    }
    const edges = [];
    for (const relation of RELATION_IDS) {
      const edgeStyle = style.edgeStyles[relation];
      if (!vs.enabledRelations.has(relation) || !edgeStyle.enabled) continue;
      const sorted = [...graph.relations[relation]].sort(
        (a, b) => compareTokens(a[0], b[0]) || compareTokens(a[1], b[1])
      );
      for (const [src, dst] of sorted) {
        if (src !== dst && visible.has(src) && visible.has(dst)) {
          edges.push({
            relation,
            source: src,
            target: dst,
            color: edgeStyle.color,
            lineWeight: edgeStyle.lineWeight
          });
        }
      }
    }
    return { nodes, edges };
  }

  // src/ui.ts
  function el(tag, cls, text) {
    const node = document.createElement(tag);
    if (cls) node.className = cls;
    if (text !== void 0) node.textContent = text;
    return node;
  }
  var PANEL_LABELS = {
    properties: "Properties",
    search: "Search",
    layout: "Layout",
    guide: "Guide"
  };
  var TOOL_LABELS = {
    select: ["\u25B6", "Select: click a node to inspect it"],
    toggle: ["\u2922", "Toggle: expand or collapse a node"],
    remove: ["\u2715", "Remove: hide a node until refresh"],
    move: ["\u271C", "Move: drag a node (pins it for the layout)"]
  };
  var _Ui = class _Ui {
    constructor(root, app) {
      this.activePanel = null;
      this.activeTool = "select";
      this.dockButtons = /* @__PURE__ */ new Map();
      this.toolButtons = /* @__PURE__ */ new Map();
      this.onToolChange = () => void 0;
      this.tourStep = -1;
      this.tourBox = null;
      this.root = root;
      this.app = app;
      this.buildDock();
      this.buildPanel();
      this.buildToolbox();
      this.buildStatus();
    }
    buildDock() {
      const dock = el("div", "dock");
      Object.keys(PANEL_LABELS).forEach((id) => {
        const button = el("button", "dock-tab", PANEL_LABELS[id][0]);
        button.title = PANEL_LABELS[id];
        button.dataset.panel = id;
        button.addEventListener("click", () => this.togglePanel(id));
        this.dockButtons.set(id, button);
        dock.appendChild(button);
      });
      this.root.appendChild(dock);
    }
    buildPanel() {
      const panel = el("aside", "panel hidden");
      this.panelTitle = el("h2", "panel-title");
      this.panelBody = el("div", "panel-body");
      panel.appendChild(this.panelTitle);
      panel.appendChild(this.panelBody);
      this.root.appendChild(panel);
    }
    buildToolbox() {
      const box = el("div", "toolbox");
      Object.keys(TOOL_LABELS).forEach((id) => {
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
    buildStatus() {
      const status = el("div", "status");
      status.id = "status-line";
      this.root.appendChild(status);
    }
    setStatus(text) {
      const status = document.getElementById("status-line");
      if (status) status.textContent = text;
    }
    setTool(tool) {
      this.activeTool = tool;
      for (const [id, button] of this.toolButtons) {
        button.classList.toggle("active", id === tool);
      }
      this.onToolChange(tool);
    }
    togglePanel(id) {
      if (this.activePanel === id) {
        this.activePanel = null;
      } else {
        this.activePanel = id;
      }
      const panel = this.root.querySelector(".panel");
      panel.classList.toggle("hidden", this.activePanel === null);
      for (const [panelId, button] of this.dockButtons) {
        button.classList.toggle("active", panelId === this.activePanel);
      }
      this.renderPanel();
    }
    openPanel(id) {
      if (this.activePanel !== id) this.togglePanel(id);
      else this.renderPanel();
    }
    renderPanel() {
      if (this.activePanel === null) return;
      this.panelTitle.textContent = PANEL_LABELS[this.activePanel];
      this.panelBody.replaceChildren();
      if (this.activePanel === "properties") this.renderProperties();
      else if (this.activePanel === "search") this.renderSearch();
      else if (this.activePanel === "layout") this.renderLayout();
      else this.renderGuide();
    }
    // -- Properties ----------------------------------------------------------
    renderProperties() {
      const token = this.app.selectedToken();
      const body = this.panelBody;
      if (!token) {
        body.appendChild(el("p", "hint", "Select a node to inspect the entity it represents."));
        return;
      }
      const entity = this.app.entity(token);
      body.appendChild(el("h3", "entity-name", entity.name));
      const chips = el("div", "chips");
      const kindLabel = entity.typeKind ? `${entity.kind} / ${entity.typeKind}` : entity.kind;
      chips.appendChild(el("span", "chip", kindLabel));
      if (entity.methodKind) chips.appendChild(el("span", "chip", entity.methodKind));
      if (entity.accessibility) chips.appendChild(el("span", "chip", entity.accessibility));
      if (entity.isStatic) chips.appendChild(el("span", "chip", "static"));
      body.appendChild(chips);
      const meta = el("dl", "meta");
      const add = (k, v) => {
        meta.appendChild(el("dt", void 0, k));
        meta.appendChild(el("dd", void 0, v));
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
          doc.appendChild(el("p", void 0, paragraph));
        }
        body.appendChild(doc);
      }
      if (entity.diagnostics.length) {
        body.appendChild(el("h4", void 0, "Diagnostics"));
        const list = el("ul", "diagnostics");
        for (const diag of entity.diagnostics) {
          const item = el("li", `diag ${diag.severity}`);
          item.appendChild(el("span", "sev", diag.severity));
          item.appendChild(
            el("span", void 0, ` ${diag.code}: ${diag.message}` + (diag.file ? ` (${diag.file}${diag.line ? ":" + diag.line : ""})` : ""))
          );
          list.appendChild(item);
        }
        body.appendChild(list);
      }
    }
    // -- Search --------------------------------------------------------------
    renderSearch() {
      const body = this.panelBody;
      const modeSelect = el("select");
      for (const mode of ["full-text", "regex", "expression"]) {
        const option = el("option", void 0, mode);
        option.value = mode;
        modeSelect.appendChild(option);
      }
      const input = el("input");
      input.placeholder = "query\u2026";
      input.id = "search-input";
      const predefined = el("select");
      const none = el("option", void 0, "predefined filters\u2026");
      none.value = "";
      predefined.appendChild(none);
      for (const entry of PREDEFINED_FILTERS) {
        const option = el(
          "option",
          void 0,
          entry.param ? `${entry.name}(${entry.param})` : entry.name
        );
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
      const run = (action) => {
        this.app.runSearch(modeSelect.value, input.value, action);
        const error = this.app.searchError();
        if (error) {
          errorBox.classList.remove("hidden");
          errorBox.textContent = `${input.value}
${" ".repeat(Math.min(error.position, 400))}^
${error.message}`;
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
    renderLayout() {
      const body = this.panelBody;
      body.appendChild(el("h4", void 0, "Entity kinds"));
      const kinds = el("div", "checks");
      for (const kind of ALL_KINDS) {
        kinds.appendChild(
          this.checkbox(
            kind,
            this.app.kindEnabled(kind),
            (on) => this.app.setKindEnabled(kind, on)
          )
        );
      }
      body.appendChild(kinds);
      body.appendChild(el("h4", void 0, "Relations"));
      const relations = el("div", "checks");
      for (const relation of RELATION_IDS) {
        const wrap = el("div", "relation-row");
        wrap.appendChild(
          this.checkbox(
            relation,
            this.app.relationEnabled(relation),
            (on) => this.app.setRelationEnabled(relation, on),
            relation === "declares"
          )
        );
        const color = el("input");
        color.type = "color";
        color.value = this.app.relationColor(relation);
        color.title = `${relation} edge color`;
        color.addEventListener("input", () => this.app.setRelationColor(relation, color.value));
        wrap.appendChild(color);
        relations.appendChild(wrap);
      }
      body.appendChild(relations);
      body.appendChild(el("h4", void 0, "Node scaling"));
      const scaling = el("select");
      for (const mode of ["linear", "log", "sqrt"]) {
        const option = el("option", void 0, mode);
        option.value = mode;
        scaling.appendChild(option);
      }
      scaling.value = this.app.scalingMode();
      scaling.addEventListener("change", () => this.app.setScalingMode(scaling.value));
      body.appendChild(scaling);
      body.appendChild(el("h4", void 0, "Force model"));
      const params = el("div", "params");
      for (const [name, label] of [
        ["ringSpacing", "ring spacing"],
        ["repulsionStrength", "repulsion"],
        ["gravity", "gravity"],
        ["thetaApprox", "theta"],
        ["maxIterations", "max iterations"],
        ["convergenceThreshold", "threshold"]
      ]) {
        const row = el("label", "param-row");
        row.appendChild(el("span", void 0, label));
        const input = el("input");
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
      const refresh2 = el("button", "action wide", "Refresh");
      refresh2.title = "Clear removals, re-seed new nodes, and re-run the layout";
      refresh2.addEventListener("click", () => this.app.refreshLayout());
      body.appendChild(refresh2);
    }
    checkbox(label, checked, onChange, disabled = false) {
      const wrap = el("label", "check");
      const input = el("input");
      input.type = "checkbox";
      input.checked = checked;
      input.disabled = disabled;
      input.addEventListener("change", () => onChange(input.checked));
      wrap.appendChild(input);
      wrap.appendChild(el("span", void 0, label));
      return wrap;
    }
    // -- Guide ---------------------------------------------------------------
    renderGuide() {
      const body = this.panelBody;
      body.appendChild(
        el(
          "p",
          void 0,
          "This diagram maps a codebase: each node is a code entity, each edge a relation. Only the solution and its projects are shown at first; expand nodes to descend into namespaces, types, and members."
        )
      );
      const tour = el("button", "action wide", "Start the tour");
      tour.addEventListener("click", () => this.app.startTour());
      body.appendChild(tour);
      body.appendChild(el("h4", void 0, "Legend"));
      const legend = el("div", "legend");
      for (const [iconId, label] of LEGEND) {
        const row = el("div", "legend-row");
        const canvas = el("canvas");
        canvas.width = 18;
        canvas.height = 18;
        const ctx = canvas.getContext("2d");
        const path = iconPath(iconId);
        if (path) {
          ctx.scale(18 / 16, 18 / 16);
          ctx.fillStyle = "#c4c9d1";
          ctx.fill(path, "evenodd");
        }
        row.appendChild(canvas);
        row.appendChild(el("span", void 0, label));
        legend.appendChild(row);
      }
      body.appendChild(legend);
      body.appendChild(el("h4", void 0, "Glyph grammar"));
      for (const line of [
        "Inner outline: dashed = static, solid = non-static.",
        "Middle outline (solid): instance member count.",
        "Outer outline (dashed): static member count.",
        "Corner icon: accessibility; public has none.",
        "Fire = error diagnostics, smoke = warnings."
      ]) {
        body.appendChild(el("p", "hint", line));
      }
    }
    startTour() {
      this.tourStep = -1;
      this.nextTourStep();
    }
    nextTourStep() {
      this.tourStep += 1;
      this.tourBox?.remove();
      document.querySelectorAll(".tour-target").forEach((node) => node.classList.remove("tour-target"));
      if (this.tourStep >= _Ui.TOUR.length) {
        this.tourBox = null;
        return;
      }
      const [selector, text] = _Ui.TOUR[this.tourStep];
      const target = document.querySelector(selector);
      target?.classList.add("tour-target");
      const box = el("div", "tour-box");
      box.appendChild(el("p", void 0, text));
      const next = el(
        "button",
        "action",
        this.tourStep === _Ui.TOUR.length - 1 ? "Done" : "Next"
      );
      next.addEventListener("click", () => this.nextTourStep());
      box.appendChild(next);
      document.body.appendChild(box);
      this.tourBox = box;
    }
  };
  // -- Tour ----------------------------------------------------------------
  _Ui.TOUR = [
    [".dock", "The dock switches between the Properties, Search, Layout, and Guide panels."],
    [".toolbox", "Tools change what clicking a node does: select, expand/collapse, remove, or move."],
    ["#diagram-canvas", "Scroll to zoom, drag the background to pan. Click a project to select it, then use the toggle tool to expand it."],
    [".dock [data-panel=search]", "Search supports full-text, regex, and expression queries; highlight the matches or isolate them."],
    [".dock [data-panel=layout]", "Enable more entity kinds and relations here, then press Refresh to lay them out."]
  ];
  var Ui = _Ui;

  // src/main.ts
  function readBlock(id) {
    const element = document.getElementById(id);
    if (!element) return null;
    const text = element.textContent.trim();
    const sep = text.indexOf(":");
    const body = atob(text.slice(sep + 1));
    const bytes = new Uint8Array(body.length);
    for (let i = 0; i < body.length; i++) bytes[i] = body.charCodeAt(i);
    return JSON.parse(new TextDecoder().decode(bytes));
  }
  async function loadDocument(name) {
    const inline = readBlock(`codecarta-${name}`);
    if (inline !== null) return inline;
    const response = await fetch(`${name}.json`);
    return response.json();
  }
  var App = class {
    constructor(graphDoc, layoutDoc, styleDoc) {
      this.layoutCfg = defaultLayoutConfig();
      this.pinned = /* @__PURE__ */ new Set();
      this.camera = { x: 0, y: 0, zoom: 1 };
      this.tool = "select";
      this.selected = null;
      this.layoutState = null;
      this.lastSearchError = null;
      this.lastMatchCount = null;
      this.reducedMotion = false;
      this.onViewChange = () => void 0;
      this.graph = parseGraphDocument(graphDoc);
      this.style = parseStyleDocument(styleDoc);
      this.view = defaultView(this.graph);
      for (const relation of Object.keys(this.style.edgeStyles)) {
        if (this.style.edgeStyles[relation].enabled) this.view.enabledRelations.add(relation);
      }
      this.snapshotPositions = new Map(
        Object.entries(layoutDoc?.positions ?? {})
      );
      this.positions = new Map(this.snapshotPositions);
      this.reducedMotion = matchMedia("(prefers-reduced-motion: reduce)").matches;
    }
    glyphConfig() {
      return this.style.glyphs;
    }
    rebuildScene() {
      this.scene = buildScene(this.graph, this.view, this.positions, this.style);
      this.ui?.setStatus(
        `${this.scene.nodes.length} visible node(s), ${this.scene.edges.length} edge(s)` + (this.layoutState && !this.layoutState.converged ? " \u2014 laying out\u2026" : "")
      );
    }
    fitCamera() {
      if (!this.scene.nodes.length) return;
      let minX = Infinity, maxX = -Infinity, minY = Infinity, maxY = -Infinity;
      for (const node of this.scene.nodes) {
        minX = Math.min(minX, node.x);
        maxX = Math.max(maxX, node.x);
        minY = Math.min(minY, node.y);
        maxY = Math.max(maxY, node.y);
      }
      this.camera.x = (minX + maxX) / 2;
      this.camera.y = (minY + maxY) / 2;
      const w = Math.max(60, maxX - minX);
      const h = Math.max(60, maxY - minY);
      this.camera.zoom = Math.min(
        this.canvas.width * 0.84 / w,
        this.canvas.height * 0.84 / h,
        4
      );
    }
    // -- layout --------------------------------------------------------------
    restartLayout(warm) {
      const sizes = /* @__PURE__ */ new Map();
      for (const token of visibleSet(this.graph, this.view)) {
        sizes.set(token, nodeRadius(this.graph.entities.get(token), this.style.glyphs));
      }
      const lg = buildLayoutGraph(this.graph, this.view, sizes);
      const seeded = seedPositions(
        this.graph,
        this.view,
        this.layoutCfg,
        1,
        warm ?? void 0
      );
      this.layoutState = initState(lg, seeded, this.layoutCfg, 1, this.pinned);
      this.positions = statePositions(this.layoutState);
      this.rebuildScene();
    }
    stepLayout(budgetMs) {
      const state = this.layoutState;
      if (!state || state.converged || state.iteration >= this.layoutCfg.maxIterations) return;
      const start = performance.now();
      do {
        stepState(state);
      } while (!state.converged && state.iteration < this.layoutCfg.maxIterations && performance.now() - start < budgetMs);
      this.positions = statePositions(state);
      this.rebuildScene();
    }
    // -- interactions --------------------------------------------------------
    hitTest(sx, sy) {
      let best = null;
      let bestDist = Infinity;
      for (const node of this.scene.nodes) {
        const [nx, ny] = worldToScreen(this.camera, this.canvas, node.x, node.y);
        const radius = Math.max(6, node.glyph.radius * this.camera.zoom) + 3;
        const dx = sx - nx;
        const dy = sy - ny;
        const dist = dx * dx + dy * dy;
        if (dist <= radius * radius && dist < bestDist) {
          best = node.token;
          bestDist = dist;
        }
      }
      return best;
    }
    clickNode(token) {
      if (token === null) {
        this.selected = null;
        this.ui.renderPanel();
        this.rebuildScene();
        return;
      }
      if (this.tool === "select") {
        this.selected = token;
        this.ui.openPanel("properties");
      } else if (this.tool === "toggle") {
        const warm = new Map(this.positions);
        this.view = toggleExpand(this.graph, this.view, token);
        this.restartLayout(warm);
        this.onViewChange();
      } else if (this.tool === "remove") {
        const warm = new Map(this.positions);
        this.view = removeNode(this.graph, this.view, token);
        if (this.selected && !isVisible(this.graph, this.view, this.selected)) {
          this.selected = null;
        }
        this.restartLayout(warm);
        this.onViewChange();
      }
      this.rebuildScene();
      this.ui.renderPanel();
    }
    dragNode(token, wx, wy) {
      this.pinned.add(token);
      this.positions.set(token, [wx, wy]);
      if (this.layoutState) {
        const index = this.layoutState.lg.index.get(token);
        if (index !== void 0) {
          this.layoutState.px[index] = wx;
          this.layoutState.py[index] = wy;
          this.layoutState.pinned[index] = 1;
        }
      }
      this.rebuildScene();
    }
    // -- AppApi (panels) -----------------------------------------------------
    entity(token) {
      return this.graph.entities.get(token);
    }
    selectedToken() {
      return this.selected;
    }
    runSearch(mode, source, action) {
      this.lastSearchError = null;
      this.lastMatchCount = null;
      let matches;
      try {
        const predicate = compileQuery({ mode, source });
        matches = evaluate(predicate, this.graph, visibleSet(this.graph, this.view));
      } catch (exc) {
        this.lastSearchError = exc instanceof QueryError ? exc : new QueryError("syntax", String(exc), 0);
        return;
      }
      this.lastMatchCount = matches.size;
      const warm = new Map(this.positions);
      this.view = applyAction(this.graph, matches, action, this.view);
      if (action === "isolate") this.restartLayout(warm);
      else this.rebuildScene();
      this.onViewChange();
    }
    clearSearch() {
      const view = cloneView(this.view);
      view.highlighted = null;
      this.view = view;
      this.lastMatchCount = null;
      this.lastSearchError = null;
      this.rebuildScene();
    }
    searchError() {
      return this.lastSearchError;
    }
    matchCount() {
      return this.lastMatchCount;
    }
    kindEnabled(kind) {
      return this.view.enabledKinds.has(kind);
    }
    setKindEnabled(kind, on) {
      const view = cloneView(this.view);
      if (on) view.enabledKinds.add(kind);
      else view.enabledKinds.delete(kind);
      this.view = view;
      this.rebuildScene();
    }
    relationEnabled(relation) {
      return this.view.enabledRelations.has(relation);
    }
    setRelationEnabled(relation, on) {
      const view = cloneView(this.view);
      if (on) view.enabledRelations.add(relation);
      else if (relation !== "declares") view.enabledRelations.delete(relation);
      this.view = view;
      this.style.edgeStyles[relation].enabled = on || relation === "declares";
      this.rebuildScene();
    }
    relationColor(relation) {
      return this.style.edgeStyles[relation].color;
    }
    setRelationColor(relation, color) {
      this.style.edgeStyles[relation].color = color;
      this.rebuildScene();
    }
    scalingMode() {
      return this.style.glyphs.scalingMode;
    }
    setScalingMode(mode) {
      this.style.glyphs.scalingMode = mode;
      this.rebuildScene();
    }
    layoutParam(name) {
      const cfg = this.layoutCfg;
      switch (name) {
        case "ringSpacing":
          return cfg.ringSpacing;
        case "repulsionStrength":
          return cfg.forces.repulsionStrength;
        case "gravity":
          return cfg.forces.gravity;
        case "thetaApprox":
          return cfg.forces.thetaApprox;
        case "maxIterations":
          return cfg.maxIterations;
        default:
          return cfg.convergenceThreshold;
      }
    }
    setLayoutParam(name, value) {
      const cfg = this.layoutCfg;
      if (name === "ringSpacing") cfg.ringSpacing = value;
      else if (name === "repulsionStrength") cfg.forces.repulsionStrength = value;
      else if (name === "gravity") cfg.forces.gravity = value;
      else if (name === "thetaApprox") cfg.forces.thetaApprox = value;
      else if (name === "maxIterations") cfg.maxIterations = value;
      else cfg.convergenceThreshold = value;
    }
    refreshLayout() {
      const warm = new Map(this.positions);
      this.view = refresh(this.graph, this.view);
      this.restartLayout(warm);
      this.ui.renderPanel();
      this.onViewChange();
    }
    visibleCount() {
      return this.scene.nodes.length;
    }
    startTour() {
      this.ui.startTour();
    }
  };
  async function boot() {
    const [graphDoc, layoutDoc, styleDoc] = await Promise.all([
      loadDocument("graph"),
      loadDocument("layout"),
      loadDocument("style")
    ]);
    const root = document.getElementById("app");
    const app = new App(graphDoc, layoutDoc, styleDoc);
    const canvas = document.createElement("canvas");
    canvas.id = "diagram-canvas";
    root.appendChild(canvas);
    app.canvas = canvas;
    app.ctx = canvas.getContext("2d");
    const resize = () => {
      canvas.width = root.clientWidth;
      canvas.height = root.clientHeight;
    };
    resize();
    addEventListener("resize", resize);
    const ui = new Ui(root, app);
    app.ui = ui;
    ui.onToolChange = (tool) => app.tool = tool;
    app.rebuildScene();
    app.fitCamera();
    let dragging = null;
    let moved = false;
    canvas.addEventListener("pointerdown", (event) => {
      const token = app.hitTest(event.offsetX, event.offsetY);
      moved = false;
      if (token && app.tool === "move") {
        dragging = { kind: "node", token, lastX: event.offsetX, lastY: event.offsetY };
      } else if (!token) {
        dragging = { kind: "pan", lastX: event.offsetX, lastY: event.offsetY };
      } else {
        dragging = null;
      }
      canvas.setPointerCapture(event.pointerId);
    });
    canvas.addEventListener("pointermove", (event) => {
      if (!dragging) return;
      const dx = event.offsetX - dragging.lastX;
      const dy = event.offsetY - dragging.lastY;
      if (Math.abs(dx) + Math.abs(dy) > 2) moved = true;
      dragging.lastX = event.offsetX;
      dragging.lastY = event.offsetY;
      if (dragging.kind === "pan") {
        app.camera.x -= dx / app.camera.zoom;
        app.camera.y -= dy / app.camera.zoom;
      } else if (dragging.token) {
        const [wx, wy] = screenToWorld(app.camera, canvas, event.offsetX, event.offsetY);
        app.dragNode(dragging.token, wx, wy);
      }
    });
    canvas.addEventListener("pointerup", (event) => {
      const wasDragging = dragging;
      dragging = null;
      if (!moved && (!wasDragging || wasDragging.kind !== "node")) {
        app.clickNode(app.hitTest(event.offsetX, event.offsetY));
      }
    });
    canvas.addEventListener("wheel", (event) => {
      event.preventDefault();
      const [wx, wy] = screenToWorld(app.camera, canvas, event.offsetX, event.offsetY);
      const factor = Math.exp(-event.deltaY * 12e-4);
      app.camera.zoom = Math.min(12, Math.max(0.02, app.camera.zoom * factor));
      const [nx, ny] = screenToWorld(app.camera, canvas, event.offsetX, event.offsetY);
      app.camera.x += wx - nx;
      app.camera.y += wy - ny;
    }, { passive: false });
    const serializeView = (vs) => ({
      expanded: [...vs.expanded],
      removed: [...vs.removed],
      highlighted: vs.highlighted === null ? null : [...vs.highlighted],
      enabledKinds: [...vs.enabledKinds],
      enabledRelations: [...vs.enabledRelations]
    });
    app.onViewChange = () => {
      try {
        history.pushState(serializeView(app.view), "");
      } catch {
      }
    };
    addEventListener("popstate", (event) => {
      const doc = event.state;
      if (!doc) return;
      app.view = {
        expanded: new Set(doc.expanded),
        removed: new Set(doc.removed),
        highlighted: doc.highlighted === null ? null : new Set(doc.highlighted),
        enabledKinds: new Set(doc.enabledKinds),
        enabledRelations: new Set(doc.enabledRelations)
      };
      app.restartLayout(new Map(app.positions));
      app.ui.renderPanel();
    });
    const visitedKey = "codecarta-visited";
    try {
      if (!localStorage.getItem(visitedKey)) {
        localStorage.setItem(visitedKey, "1");
        ui.openPanel("guide");
        ui.startTour();
      }
    } catch {
    }
    const frame = () => {
      app.stepLayout(8);
      renderScene(app.ctx, canvas, app.scene, app.positions, app.camera, {
        selected: app.selected,
        reducedMotion: app.reducedMotion,
        clock: performance.now(),
        labels: true,
        labelOf: (token) => app.graph.entities.get(token)?.name ?? token
      });
      requestAnimationFrame(frame);
    };
    requestAnimationFrame(frame);
  }
  boot().catch((error) => {
    const root = document.getElementById("app");
    if (root) {
      const box = document.createElement("pre");
      box.className = "boot-error";
      box.textContent = `failed to start: ${error}`;
      root.appendChild(box);
    }
  });
})();
