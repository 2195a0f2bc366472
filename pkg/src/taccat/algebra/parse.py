"""Recursive-descent parser for the polynomial text grammar.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor | '/' INT)*
    factor := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Division is only allowed by integer literals (rational coefficients).
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, sym = m.groups()
        col = m.start(m.lastindex)
        if num is not None:
            tokens.append(("int", int(num), col))
        elif name is not None:
            tokens.append(("name", name, col))
        elif sym in "+-*^()/":
            tokens.append((sym, sym, col))
        else:
            raise ParseError(f"unexpected character {sym!r}", column=col + 1)
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            self.error(f"expected {kind!r}")
        self.i += 1
        return tok

    def error(self, msg):
        col = self.tokens[self.i][2]
        raise ParseError(f"{msg} in {self.text!r}", column=col + 1)

    def parse(self):
        if self.peek() == "end":
            self.error("empty polynomial")
        value = self.expr()
        if self.peek() != "end":
            self.error(f"unexpected token {self.tokens[self.i][1]!r}")
        return value

    def expr(self):
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            if op == "*":
                value = value * self.factor()
            else:
                den = self.take("int")[1]
                if den == 0:
                    self.error("division by zero")
                value = value.scale(Fraction(1, den))
        return value

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.take("int")[1]
            base = base**exp
        return base

    def atom(self):
        kind = self.peek()
        if kind == "int":
            return self.ring.constant(self.take()[1])
        if kind == "name":
            name = self.take()[1]
            if name not in self.ring.names:
                self.i -= 1
                self.error(f"unknown variable {name!r}")
            return self.ring.gen(name)
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        self.error("expected a number, variable or '('")


def parse_polynomial(text: str, ring):
    return _Parser(text, ring).parse()
