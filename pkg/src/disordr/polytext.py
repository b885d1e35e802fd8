"""Reading and writing polynomial literals.

Grammar (whitespace is insignificant between tokens)::

    polynomial  := signed_term { ("+" | "-") term }
    signed_term := ["+" | "-"] term
    term        := coefficient { ["*"] factor } | factor { ["*"] factor }
    factor      := symbol ["^" integer]
    symbol      := letter { letter | digit | "_" }
    integer     := ["-"] digit { digit }

Juxtaposed letters form one symbol: ``bc`` is the symbol ``bc``, not
``b*c``.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .mvp import Monomial, Mvp, _combine

HEADER = "mvp object algebraically equal to"

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<symbol>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*^])
    """,
    re.VERBOSE,
)


def _tokenize(source: str):
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", pos,
                             {"number", "symbol", "+", "-", "*", "^"})
        kind = m.lastgroup
        if kind != "ws":
            text = m.group()
            tokens.append((kind if kind != "op" else text, text, pos))
        pos = m.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        kind, text, pos = self.peek()
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"unexpected {found}", pos, expected)

    def polynomial(self):
        contributions: dict[Monomial, list] = {}
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.advance()[0] == "-" else 1
        while True:
            monomial, coeff = self.term()
            contributions.setdefault(monomial, []).append(sign * coeff)
            kind = self.peek()[0]
            if kind == "end":
                break
            if kind not in ("+", "-"):
                self.fail({"+", "-", "end of input"})
            sign = -1 if self.advance()[0] == "-" else 1
        return Mvp._from_clean(_combine(contributions))

    def term(self):
        kind, text, _ = self.peek()
        factors = []
        if kind == "number":
            self.advance()
            coeff = _number(text)
        elif kind == "symbol":
            coeff = 1
            factors.append(self.factor())
        else:
            self.fail({"number", "symbol"})
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.advance()
                if self.peek()[0] != "symbol":
                    self.fail({"symbol"})
                factors.append(self.factor())
            elif kind == "symbol":
                factors.append(self.factor())
            else:
                break
        return Monomial(factors), coeff

    def factor(self):
        _, name, _ = self.advance()
        if self.peek()[0] != "^":
            return name, 1
        self.advance()
        negative = False
        if self.peek()[0] == "-":
            self.advance()
            negative = True
        kind, text, _ = self.peek()
        if kind != "number" or not text.isdigit():
            self.fail({"integer"})
        self.advance()
        return name, -int(text) if negative else int(text)


def _number(text: str):
    if text.isdigit():
        return int(text)
    return float(text)


def parse_mvp(source: str) -> Mvp:
    """Parse a polynomial literal such as ``"x^2 + 4 - 3*x*y*z"``."""
    return _Parser(source).polynomial()


def format_coefficient(c) -> str:
    if isinstance(c, float) and c.is_integer() and abs(c) < 1e15:
        return str(int(c))
    return repr(c) if isinstance(c, float) else str(c)


def format_terms(p: Mvp) -> str:
    """The printed polynomial without the header line."""
    if p.is_zero():
        return "0"
    pieces = []
    for i, (monomial, c) in enumerate(sorted(p.terms.items(), key=lambda kv: kv[0])):
        negative = c < 0
        magnitude = format_coefficient(-c if negative else c)
        if monomial.is_constant():
            body = magnitude
        elif magnitude == "1":
            body = str(monomial)
        else:
            body = f"{magnitude} {monomial}"
        if i == 0:
            pieces.append("-" + body if negative else body)
        else:
            pieces.append(("  -  " if negative else "  +  ") + body)
    return "".join(pieces)


def print_mvp(p: Mvp) -> str:
    return HEADER + "\n" + format_terms(p)
