"""A small sandboxed predicate-expression language over entity fields.

Grammar (EBNF):

    expr := or
    or   := and ("||" and)*
    and  := cmp ("&&" cmp)*
    cmp  := term (("==" | "!=" | "<" | "<=" | ">" | ">=") term)?
    term := ident | literal | func "(" args ")" | "!" term | "(" expr ")"

Literals are double-quoted strings, numbers, and true/false. Expressions are
type-checked at compile time against the closed field vocabulary, so the only
runtime failure mode is a dynamic regex pattern that does not compile.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable

from .errors import ExprNameError, ExprSyntaxError, ExprTypeError
from .model import Entity, Severity

# ---------------------------------------------------------------------------
# Field and function vocabulary


def _doc_text(e: Entity) -> str:
    return e.doc_comment or ""


FIELD_TYPES: dict[str, str] = {
    "name": "str",
    "kind": "str",
    "typeKind": "str",
    "methodKind": "str",
    "accessibility": "str",
    "isStatic": "bool",
    "memberCount": "num",
    "instanceMemberCount": "num",
    "staticMemberCount": "num",
    "hasErrors": "bool",
    "hasWarnings": "bool",
    "hasDoc": "bool",
}

_FIELD_GETTERS: dict[str, Callable[[Entity], Any]] = {
    "name": lambda e: e.name,
    "kind": lambda e: e.kind.value,
    "typeKind": lambda e: e.type_kind.value if e.type_kind else "",
    "methodKind": lambda e: e.method_kind.value if e.method_kind else "",
    "accessibility": lambda e: e.accessibility.value if e.accessibility else "",
    "isStatic": lambda e: e.is_static,
    "memberCount": lambda e: e.instance_member_count + e.static_member_count,
    "instanceMemberCount": lambda e: e.instance_member_count,
    "staticMemberCount": lambda e: e.static_member_count,
    "hasErrors": lambda e: any(d.severity == Severity.ERROR for d in e.diagnostics),
    "hasWarnings": lambda e: any(d.severity == Severity.WARNING for d in e.diagnostics),
    "hasDoc": lambda e: e.doc_comment is not None,
}

# name -> (argument types, result type, implementation(entity, *args))
FUNCTIONS: dict[str, tuple[tuple[str, ...], str, Callable[..., Any]]] = {
    "docContains": (
        ("str",),
        "bool",
        lambda e, needle: needle.lower() in _doc_text(e).lower(),
    ),
    "contains": (
        ("str", "str"),
        "bool",
        lambda e, hay, needle: needle.lower() in hay.lower(),
    ),
    "matches": (
        ("str", "str"),
        "bool",
        lambda e, text, pattern: re.search(pattern, text) is not None,
    ),
}

VALID_NAMES = tuple(sorted(FIELD_TYPES)) + tuple(sorted(FUNCTIONS))


# ---------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<str>"(?:[^"\\]|\\.)*")
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>&&|\|\||==|!=|<=|>=|[<>!(),])
""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class Lexeme:
    kind: str  # "num" | "str" | "ident" | "op" | "eof"
    text: str
    pos: int


def _lex(source: str) -> list[Lexeme]:
    out: list[Lexeme] = []
    i = 0
    while i < len(source):
        m = _TOKEN_RE.match(source, i)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {source[i]!r}", i)
        if m.lastgroup != "ws":
            out.append(Lexeme(m.lastgroup, m.group(), i))
        i = m.end()
    out.append(Lexeme("eof", "", len(source)))
    return out


def _unescape(text: str, pos: int) -> str:
    body = text[1:-1]
    try:
        return body.encode("utf-8").decode("unicode_escape")
    except UnicodeDecodeError as exc:
        raise ExprSyntaxError(f"bad string escape: {exc}", pos) from exc


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Node:
    pos: int


@dataclass(frozen=True)
class BoolOp(Node):
    op: str  # "&&" | "||"
    items: tuple["Node", ...]


@dataclass(frozen=True)
class Cmp(Node):
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Not(Node):
    operand: "Node"


@dataclass(frozen=True)
class Ident(Node):
    name: str


@dataclass(frozen=True)
class Lit(Node):
    value: Any  # str | float | bool
    type: str


@dataclass(frozen=True)
class Call(Node):
    name: str
    args: tuple["Node", ...]


class _Parser:
    def __init__(self, source: str):
        self.lexemes = _lex(source)
        self.i = 0

    @property
    def cur(self) -> Lexeme:
        return self.lexemes[self.i]

    def eat(self, kind: str, text: str | None = None) -> Lexeme:
        lexeme = self.cur
        if lexeme.kind != kind or (text is not None and lexeme.text != text):
            want = text or kind
            raise ExprSyntaxError(f"expected {want!r}, got {lexeme.text or 'end'!r}", lexeme.pos)
        self.i += 1
        return lexeme

    def parse(self) -> Node:
        node = self.expr()
        if self.cur.kind != "eof":
            raise ExprSyntaxError(f"unexpected {self.cur.text!r}", self.cur.pos)
        return node

    def expr(self) -> Node:
        return self.or_()

    def or_(self) -> Node:
        first = self.and_()
        items = [first]
        while self.cur.kind == "op" and self.cur.text == "||":
            self.eat("op", "||")
            items.append(self.and_())
        return first if len(items) == 1 else BoolOp(first.pos, "||", tuple(items))

    def and_(self) -> Node:
        first = self.cmp()
        items = [first]
        while self.cur.kind == "op" and self.cur.text == "&&":
            self.eat("op", "&&")
            items.append(self.cmp())
        return first if len(items) == 1 else BoolOp(first.pos, "&&", tuple(items))

    def cmp(self) -> Node:
        left = self.term()
        if self.cur.kind == "op" and self.cur.text in ("==", "!=", "<", "<=", ">", ">="):
            op = self.eat("op")
            right = self.term()
            return Cmp(op.pos, op.text, left, right)
        return left

    def term(self) -> Node:
        lexeme = self.cur
        if lexeme.kind == "op" and lexeme.text == "!":
            self.eat("op", "!")
            return Not(lexeme.pos, self.term())
        if lexeme.kind == "op" and lexeme.text == "(":
            self.eat("op", "(")
            inner = self.expr()
            self.eat("op", ")")
            return inner
        if lexeme.kind == "num":
            self.eat("num")
            return Lit(lexeme.pos, float(lexeme.text), "num")
        if lexeme.kind == "str":
            self.eat("str")
            return Lit(lexeme.pos, _unescape(lexeme.text, lexeme.pos), "str")
        if lexeme.kind == "ident":
            self.eat("ident")
            if lexeme.text in ("true", "false"):
                return Lit(lexeme.pos, lexeme.text == "true", "bool")
            if self.cur.kind == "op" and self.cur.text == "(":
                self.eat("op", "(")
                args: list[Node] = []
                if not (self.cur.kind == "op" and self.cur.text == ")"):
                    args.append(self.expr())
                    while self.cur.kind == "op" and self.cur.text == ",":
                        self.eat("op", ",")
                        args.append(self.expr())
                self.eat("op", ")")
                return Call(lexeme.pos, lexeme.text, tuple(args))
            return Ident(lexeme.pos, lexeme.text)
        raise ExprSyntaxError(f"expected a value, got {lexeme.text or 'end'!r}", lexeme.pos)


def parse_expression(source: str) -> Node:
    return _Parser(source).parse()


# ---------------------------------------------------------------------------
# Type checking and compilation

_ORDERED_OPS = {"<", "<=", ">", ">="}


def _check(node: Node) -> str:
    """Infer the node type, raising compile errors for misuse."""
    if isinstance(node, Lit):
        return node.type
    if isinstance(node, Ident):
        if node.name not in FIELD_TYPES:
            raise ExprNameError(node.name, node.pos, VALID_NAMES)
        return FIELD_TYPES[node.name]
    if isinstance(node, Call):
        if node.name not in FUNCTIONS:
            raise ExprNameError(node.name, node.pos, VALID_NAMES)
        arg_types, result, _ = FUNCTIONS[node.name]
        if len(node.args) != len(arg_types):
            raise ExprTypeError(
                f"{node.name}() takes {len(arg_types)} argument(s), got {len(node.args)}",
                node.pos,
            )
        for arg, expected in zip(node.args, arg_types):
            actual = _check(arg)
            if actual != expected:
                raise ExprTypeError(
                    f"{node.name}() argument must be {expected}, got {actual}", arg.pos
                )
        return result
    if isinstance(node, Not):
        if _check(node.operand) != "bool":
            raise ExprTypeError("'!' needs a boolean operand", node.pos)
        return "bool"
    if isinstance(node, Cmp):
        left = _check(node.left)
        right = _check(node.right)
        if left != right:
            raise ExprTypeError(
                f"cannot compare {left} with {right}", node.pos
            )
        if node.op in _ORDERED_OPS and left != "num":
            raise ExprTypeError(f"{node.op!r} needs numeric operands", node.pos)
        return "bool"
    if isinstance(node, BoolOp):
        for item in node.items:
            if _check(item) != "bool":
                raise ExprTypeError(
                    f"{node.op!r} needs boolean operands", item.pos
                )
        return "bool"
    raise AssertionError(f"unhandled node {node!r}")


def _compile_node(node: Node) -> Callable[[Entity], Any]:
    if isinstance(node, Lit):
        value = node.value
        return lambda e: value
    if isinstance(node, Ident):
        return _FIELD_GETTERS[node.name]
    if isinstance(node, Call):
        impl = FUNCTIONS[node.name][2]
        arg_fns = [_compile_node(arg) for arg in node.args]
        return lambda e: impl(e, *(fn(e) for fn in arg_fns))
    if isinstance(node, Not):
        inner = _compile_node(node.operand)
        return lambda e: not inner(e)
    if isinstance(node, Cmp):
        left = _compile_node(node.left)
        right = _compile_node(node.right)
        op = node.op
        if op == "==":
            return lambda e: left(e) == right(e)
        if op == "!=":
            return lambda e: left(e) != right(e)
        if op == "<":
            return lambda e: left(e) < right(e)
        if op == "<=":
            return lambda e: left(e) <= right(e)
        if op == ">":
            return lambda e: left(e) > right(e)
        return lambda e: left(e) >= right(e)
    if isinstance(node, BoolOp):
        item_fns = [_compile_node(item) for item in node.items]
        if node.op == "&&":
            return lambda e: all(fn(e) for fn in item_fns)
        return lambda e: any(fn(e) for fn in item_fns)
    raise AssertionError(f"unhandled node {node!r}")


def compile_expression(source: str) -> Callable[[Entity], bool]:
    """Parse, type-check, and compile; the root must evaluate to a boolean."""
    node = parse_expression(source)
    if _check(node) != "bool":
        raise ExprTypeError("expression must evaluate to a boolean", node.pos)
    fn = _compile_node(node)
    return lambda e: bool(fn(e))
