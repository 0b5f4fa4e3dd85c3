"""Recursive-descent parser for the ASCII surface grammar.

    type  ::= "N" | type "->" type | "(" type ")"
    term  ::= "\\" ident ":" type "." term | appseq
    appseq ::= atom atom*
    atom  ::= ident | "0" | "S" | "R" "[" type "]" | "#" digits | "(" term ")"

``λ`` and ``→`` are accepted as synonyms, ``--`` starts a comment, and a
lambda may close an application spine (``f \\x:N. x``).
"""

from __future__ import annotations

import re
from typing import Mapping

from ._deep import deep
from .errors import ParseError, UnboundIdentifierError
from .syntax import (
    EMPTY,
    N,
    SUCC,
    ZERO,
    App,
    Arrow,
    Lam,
    Rec,
    Term,
    TypeExpr,
    TypingContext,
    Var,
    numeral_term,
    shift,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|--[^\n]*)
  | (?P<arrow>->|→)
  | (?P<lam>\\|λ)
  | (?P<num>\#\d+)
  | (?P<zero>0(?![0-9]))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[():.\[\]])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "punct":
                kind = value
            tokens.append((kind, value, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: TypingContext, defs: Mapping[str, Term]):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.defs = defs
        self.bound: list[str] = []

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.advance()
        if tok[0] != kind:
            shown = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r} but found {shown!r}", tok[2], self.text)
        return tok

    def finish(self) -> None:
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)

    # types

    def type_(self) -> TypeExpr:
        dom = self.type_atom()
        if self.peek()[0] == "arrow":
            self.advance()
            return Arrow(dom, self.type_())
        return dom

    def type_atom(self) -> TypeExpr:
        tok = self.advance()
        if tok[0] == "ident" and tok[1] == "N":
            return N
        if tok[0] == "(":
            t = self.type_()
            self.expect(")")
            return t
        shown = tok[1] or "end of input"
        raise ParseError(f"expected a type but found {shown!r}", tok[2], self.text)

    # terms

    def term(self) -> Term:
        if self.peek()[0] == "lam":
            return self.lam()
        return self.appseq()

    def lam(self) -> Term:
        self.expect("lam")
        _, name, pos = self.expect("ident")
        if name in ("N", "S", "R"):
            raise ParseError(f"{name!r} is reserved", pos, self.text)
        self.expect(":")
        ty = self.type_()
        self.expect(".")
        self.bound.insert(0, name)
        body = self.term()
        del self.bound[0]
        return Lam(ty, body, name)

    def appseq(self) -> Term:
        t = self.atom()
        while True:
            kind = self.peek()[0]
            if kind in ("ident", "zero", "num", "("):
                t = App(t, self.atom())
            elif kind == "lam":
                return App(t, self.lam())
            else:
                return t

    def atom(self) -> Term:
        kind, value, pos = self.advance()
        if kind == "(":
            t = self.term()
            self.expect(")")
            return t
        if kind == "zero":
            return ZERO
        if kind == "num":
            return numeral_term(int(value[1:]))
        if kind == "ident":
            if value == "S":
                return SUCC
            if value == "R":
                self.expect("[")
                ty = self.type_()
                self.expect("]")
                return Rec(ty)
            if value == "N":
                raise ParseError("type 'N' where a term was expected", pos, self.text)
            return self.resolve(value, pos)
        shown = value or "end of input"
        raise ParseError(f"expected a term but found {shown!r}", pos, self.text)

    def resolve(self, name: str, pos: int) -> Term:
        if name in self.bound:
            return Var(self.bound.index(name), name)
        idx = self.ctx.find(name)
        if idx is not None:
            return Var(idx + len(self.bound), name)
        if name in self.defs:
            return shift(self.defs[name], len(self.bound) + len(self.ctx))
        raise UnboundIdentifierError(f"unbound identifier {name!r}", pos, self.text)


def parse_type(text: str) -> TypeExpr:
    p = _Parser(text, EMPTY, {})
    t = p.type_()
    p.finish()
    return t


@deep
def parse_term(
    text: str,
    ctx: TypingContext = EMPTY,
    defs: Mapping[str, Term] | None = None,
) -> Term:
    """Parse ``text`` into a nameless term.

    Free identifiers resolve first to ``ctx`` and then to the closed
    definitions in ``defs`` (e.g. the combinator namespace of ``stdlib``).
    """
    p = _Parser(text, ctx, defs or {})
    t = p.term()
    p.finish()
    return t
