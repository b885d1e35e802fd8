"""Lexer and parser for the calculator's session language.

One statement per line; ``#`` starts a comment.  Precedence from loosest
to tightest: ``<-``, comparisons, ``+ -``, ``* / %%``, ``:``, unary minus,
``^`` (right associative), then calls and indexing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .errors import ParseError


@dataclass(frozen=True)
class Num:
    value: Union[int, float]


@dataclass(frozen=True)
class Str:
    value: str


@dataclass(frozen=True)
class Bool:
    value: bool


@dataclass(frozen=True)
class Name:
    id: str


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Node"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


@dataclass(frozen=True)
class Index:
    target: "Node"
    index: Optional["Node"]  # None for empty brackets


@dataclass(frozen=True)
class Assign:
    target: "Node"
    value: "Node"


@dataclass(frozen=True)
class Paren:
    expr: "Node"


Node = Union[Num, Str, Bool, Name, Unary, Binary, Call, Index, Assign, Paren]


@dataclass(frozen=True)
class Statement:
    line: int
    source: str
    expr: Node


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#.*)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<string>"[^"\n]*"|'[^'\n]*')
  | (?P<name>[A-Za-z_.][A-Za-z0-9_.]*)
  | (?P<op><-|<=|>=|==|!=|%%|[-+*/^<>:()\[\],])
    """,
    re.VERBOSE,
)

COMPARISONS = ("<", "<=", ">", ">=", "==", "!=")


def tokenize(text: str, offset: int = 0):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", offset + pos)
        kind = m.lastgroup
        value = m.group()
        if kind == "op":
            tokens.append((value, value, offset + pos))
        elif kind not in ("ws", "comment"):
            tokens.append((kind, value, offset + pos))
        pos = m.end()
    tokens.append(("end", "", offset + len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self, ahead: int = 0):
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        if self.peek()[0] != kind:
            self.fail({kind})
        return self.advance()

    def fail(self, expected):
        kind, text, pos = self.peek()
        found = "end of line" if kind == "end" else repr(text)
        raise ParseError(f"unexpected {found}", pos, expected)

    def statement(self):
        node = self.assignment()
        if self.peek()[0] != "end":
            self.fail({"end of line", "operator"})
        return node

    def assignment(self):
        start = self.peek()[2]
        left = self.comparison()
        if self.peek()[0] == "<-":
            self.advance()
            _check_target(left, start)
            return Assign(left, self.assignment())
        return left

    def comparison(self):
        node = self.additive()
        while self.peek()[0] in COMPARISONS:
            op = self.advance()[0]
            node = Binary(op, node, self.additive())
        return node

    def additive(self):
        node = self.multiplicative()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            node = Binary(op, node, self.multiplicative())
        return node

    def multiplicative(self):
        node = self.range()
        while self.peek()[0] in ("*", "/", "%%"):
            op = self.advance()[0]
            node = Binary(op, node, self.range())
        return node

    def range(self):
        node = self.unary()
        while self.peek()[0] == ":":
            self.advance()
            node = Binary(":", node, self.unary())
        return node

    def unary(self):
        if self.peek()[0] in ("-", "+"):
            op = self.advance()[0]
            return Unary(op, self.unary())
        return self.power()

    def power(self):
        node = self.postfix()
        if self.peek()[0] == "^":
            self.advance()
            return Binary("^", node, self.unary())
        return node

    def postfix(self):
        node = self.primary()
        while True:
            kind = self.peek()[0]
            if kind == "(":
                if not isinstance(node, Name):
                    self.fail({"operator"})
                self.advance()
                node = Call(node.id, self.arguments())
            elif kind == "[":
                self.advance()
                if self.peek()[0] == "]":
                    self.advance()
                    node = Index(node, None)
                else:
                    index = self.assignment()
                    self.expect("]")
                    node = Index(node, index)
            else:
                return node

    def arguments(self):
        args = []
        if self.peek()[0] == ")":
            self.advance()
            return tuple(args)
        while True:
            args.append(self.assignment())
            kind = self.peek()[0]
            if kind == ")":
                self.advance()
                return tuple(args)
            if kind != ",":
                self.fail({",", ")"})
            self.advance()

    def primary(self):
        kind, text, _ = self.peek()
        if kind == "number":
            self.advance()
            return Num(int(text) if text.isdigit() else float(text))
        if kind == "string":
            self.advance()
            return Str(text[1:-1])
        if kind == "name":
            self.advance()
            if text in ("TRUE", "FALSE"):
                return Bool(text == "TRUE")
            return Name(text)
        if kind == "(":
            self.advance()
            node = self.assignment()
            self.expect(")")
            return Paren(node)
        self.fail({"number", "string", "name", "("})


def _check_target(node, pos):
    if isinstance(node, Index):
        node = node.target
    if isinstance(node, Name):
        return
    if isinstance(node, Call) and node.func == "coeffs" and len(node.args) == 1 \
            and isinstance(node.args[0], Name):
        return
    raise ParseError("invalid assignment target", pos, {"name", "name[...]", "coeffs(name)"})


def parse_line(text: str, offset: int = 0) -> Optional[Node]:
    """Parse one line; returns None for blank or comment-only lines."""
    tokens = tokenize(text, offset)
    if tokens[0][0] == "end":
        return None
    return _Parser(tokens).statement()


def parse_script(source: str) -> list[Statement]:
    statements = []
    offset = 0
    for lineno, line in enumerate(source.splitlines(), start=1):
        node = parse_line(line, offset)
        if node is not None:
            statements.append(Statement(lineno, line, node))
        offset += len(line) + 1
    return statements
