"""Recursive-descent parser for the expression language.

Grammar, loosest binding first::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ("^" unary)?          right-associative
    primary := NUMBER | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"

so ``-x^2`` is ``-(x^2)`` and ``x^-2`` is ``x^(-2)``. A minus sign directly in
front of a number literal (and not followed by ``^``) yields a negative
:class:`Number` rather than a :class:`Neg` node.
"""

from __future__ import annotations

import re
from typing import List, NamedTuple

from ..errors import ParseError
from .expr import CONSTANTS, FUNCTIONS, Add, Apply, Const, Div, Expr, Mul, Neg, Number, Pow, Sub, Variable

__all__ = ["parse", "tokenize"]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str  # "number", "ident", "op" or "end"
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(pos, f"unexpected character {text[pos]!r}")
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def at(self, op: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == op

    def expect(self, op: str) -> Token:
        if not self.at(op):
            self.fail(f"expected {op!r}")
        return self.advance()

    def fail(self, message: str):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(t.pos, f"{message}, found {found}")

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            self.fail("expected operator or end of input")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance().text
            rhs = self.unary()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def unary(self) -> Expr:
        if self.at("-"):
            nxt, after = self.peek(1), self.peek(2)
            if nxt.kind == "number" and not (after.kind == "op" and after.text == "^"):
                self.advance()
                return Number(-float(self.advance().text))
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.at("^"):
            self.advance()
            return Pow(base, self.unary())
        return base

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "number":
            self.advance()
            return Number(float(t.text))
        if t.kind == "ident":
            self.advance()
            if self.at("("):
                if t.text not in FUNCTIONS:
                    raise ParseError(t.pos, f"unknown function {t.text!r}")
                self.advance()
                args = [self.expr()]
                while self.at(","):
                    self.advance()
                    args.append(self.expr())
                self.expect(")")
                if len(args) != FUNCTIONS[t.text]:
                    raise ParseError(
                        t.pos, f"{t.text} takes {FUNCTIONS[t.text]} argument(s), got {len(args)}"
                    )
                return Apply(t.text, tuple(args))
            if t.text in FUNCTIONS:
                self.fail(f"expected '(' after function {t.text!r}")
            if t.text in CONSTANTS:
                return Const(t.text)
            return Variable(t.text)
        if self.at("("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        self.fail("expected number, name or '('")


def parse(text: str) -> Expr:
    """Parse ``text`` into an :class:`Expr`.

    Raises :class:`ParseError` whose ``position`` is the 0-based UTF-8 byte
    offset of the first offending token (equal to the character index for
    ASCII input).
    """
    try:
        return _Parser(text).parse()
    except ParseError as err:
        offset = len(text[: err.position].encode("utf-8"))
        if offset == err.position:
            raise
        raise ParseError(offset, err.message) from None
