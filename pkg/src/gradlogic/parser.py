"""ASCII concrete syntax, pretty-printer and JSON interchange format.

Grammar, loosest binding first::

    impl  := grad ( "->" impl )?              right-assoc, desugars to !F1 | F2
    grad  := junct ( ">" grad )?              right-assoc
    junct := unary ( ("&" | "|") unary )*     left-assoc; & and | may not mix
    unary := "!" unary | primary
    primary := IDENT ["'"] | "top" | "bot" | "(" impl ")"

``p'`` is the complemented literal; ``top``/``bot`` are the nullary connectives.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

from gradlogic.core import (
    BOT,
    TOP,
    And,
    Elem,
    Formula,
    Grad,
    Not,
    Or,
    RESERVED,
    SElem,
    lit,
)

E_LEX = "E_LEX"
E_PAREN = "E_PAREN"
E_AMBIGUOUS = "E_AMBIGUOUS"
E_EMPTY = "E_EMPTY"
E_RESERVED = "E_RESERVED"
E_SYNTAX = "E_SYNTAX"

_MESSAGES = {
    E_LEX: "unexpected character {detail}",
    E_PAREN: "unbalanced parenthesis {detail}",
    E_AMBIGUOUS: "'&' and '|' mixed without parentheses {detail}",
    E_EMPTY: "empty formula {detail}",
    E_RESERVED: "reserved word used as an atom {detail}",
    E_SYNTAX: "unexpected token {detail}",
}


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets ``[begin, end)`` into the UTF-8 encoded input."""

    begin: int
    end: int


class ParseError(ValueError):
    def __init__(self, code: str, span: SourceSpan, detail: str = ""):
        self.code = code
        self.span = span
        self.message = _MESSAGES[code].format(detail=detail).strip()
        super().__init__(f"{code} at {span.begin}..{span.end}: {self.message}")


# -- lexer --------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<ident>[A-Za-z0-9_]+'?)
  | (?P<op>[!&|>()])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str  # "ident" | op character | "->" | "eof"
    text: str
    begin: int  # character offsets; converted to bytes when reported
    end: int


def _tokenize(text: str, to_span) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(E_LEX, to_span(pos, pos + 1), repr(text[pos]))
        kind = m.lastgroup
        if kind == "ident":
            toks.append(_Tok("ident", m.group(), m.start(), m.end()))
        elif kind == "arrow":
            toks.append(_Tok("->", "->", m.start(), m.end()))
        elif kind == "op":
            toks.append(_Tok(m.group(), m.group(), m.start(), m.end()))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text), len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text, self.span)
        self.i = 0

    def span(self, begin: int, end: int) -> SourceSpan:
        b = len(self.text[:begin].encode())
        return SourceSpan(b, b + len(self.text[begin:end].encode()))

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, code: str, tok: _Tok, detail: str = ""):
        raise ParseError(code, self.span(tok.begin, tok.end), detail)

    def parse(self) -> Formula:
        if self.tok.kind == "eof":
            self.fail(E_EMPTY, self.tok)
        f = self.impl()
        if self.tok.kind == ")":
            self.fail(E_PAREN, self.tok, "(no matching '(')")
        if self.tok.kind != "eof":
            self.fail(E_SYNTAX, self.tok, repr(self.tok.text))
        return f

    def impl(self) -> Formula:
        left = self.grad()
        if self.tok.kind == "->":
            self.advance()
            return Or(Not(left), self.impl())
        return left

    def grad(self) -> Formula:
        left = self.junct()
        if self.tok.kind == ">":
            self.advance()
            return Grad(left, self.grad())
        return left

    def junct(self) -> Formula:
        left = self.unary()
        op = None
        while self.tok.kind in ("&", "|"):
            t = self.advance()
            if op is not None and t.kind != op:
                self.fail(E_AMBIGUOUS, t)
            op = t.kind
            right = self.unary()
            left = And(left, right) if op == "&" else Or(left, right)
        return left

    def unary(self) -> Formula:
        if self.tok.kind == "!":
            self.advance()
            return Not(self.unary())
        return self.primary()

    def primary(self) -> Formula:
        t = self.tok
        if t.kind == "ident":
            self.advance()
            return Elem(self.selem(t))
        if t.kind == "(":
            self.advance()
            if self.tok.kind == ")":
                self.fail(E_EMPTY, self.tok, "inside parentheses")
            f = self.impl()
            if self.tok.kind != ")":
                self.fail(E_PAREN, t, "(no matching ')')")
            self.advance()
            return f
        if t.kind == ")":
            self.fail(E_PAREN, t, "(no matching '(')")
        if t.kind == "eof":
            self.fail(E_SYNTAX, t, "end of input")
        self.fail(E_SYNTAX, t, repr(t.text))

    def selem(self, t: _Tok) -> SElem:
        name, negated = t.text, False
        if name.endswith("'"):
            name, negated = name[:-1], True
        if name in RESERVED:
            # top/bot are connectives, not atoms; they take no complement mark.
            if negated:
                self.fail(E_RESERVED, t, repr(t.text))
            return TOP if name == "top" else BOT
        return lit(name, negated)


def parse(text: str) -> Formula:
    """Parse ``text``; raises :class:`ParseError` on failure."""
    return _Parser(text).parse()


# -- pretty printer -----------------------------------------------------------


def pretty(f: Formula) -> str:
    """Minimal-parenthesis rendering such that ``parse(pretty(f)) == f``."""
    match f:
        case Elem(s):
            return str(s)
        case Not(arg):
            inner = pretty(arg)
            return "!" + (inner if isinstance(arg, (Elem, Not)) else f"({inner})")
        case And(l, r) | Or(l, r):
            sym = " & " if isinstance(f, And) else " | "
            lhs = pretty(l)
            if not isinstance(l, (Elem, Not, type(f))):
                lhs = f"({lhs})"
            rhs = pretty(r)
            if not isinstance(r, (Elem, Not)):
                rhs = f"({rhs})"
            return lhs + sym + rhs
        case Grad(l, r):
            lhs = pretty(l)
            if isinstance(l, Grad):
                lhs = f"({lhs})"
            return f"{lhs} > {pretty(r)}"
    raise TypeError(f"not a formula: {f!r}")


# -- interchange --------------------------------------------------------------

_OPS = {And: "and", Or: "or", Grad: "grad"}
_CLASSES = {v: k for k, v in _OPS.items()}


def to_tree(f: Formula) -> dict:
    match f:
        case Elem(s):
            if s.is_lit:
                return {"op": "elem", "kind": "lit", "name": s.name, "neg": s.negated}
            return {"op": "elem", "kind": s.kind}
        case Not(arg):
            return {"op": "not", "args": [to_tree(arg)]}
    return {"op": _OPS[type(f)], "args": [to_tree(f.left), to_tree(f.right)]}


def from_tree(doc) -> Formula:
    if not isinstance(doc, dict):
        raise ValueError("node must be an object")
    op = doc.get("op")
    if op == "elem":
        kind = doc.get("kind")
        if kind == "top":
            return Elem(TOP)
        if kind == "bot":
            return Elem(BOT)
        if kind == "lit":
            neg = doc.get("neg", False)
            if not isinstance(neg, bool):
                raise ValueError("'neg' must be a boolean")
            return Elem(lit(doc.get("name"), neg))
        raise ValueError(f"unknown elem kind {kind!r}")
    args = doc.get("args")
    if not isinstance(args, list):
        raise ValueError("'args' must be a list")
    if op == "not":
        if len(args) != 1:
            raise ValueError("'not' takes one argument")
        return Not(from_tree(args[0]))
    if op in _CLASSES:
        if len(args) != 2:
            raise ValueError(f"{op!r} takes two arguments")
        return _CLASSES[op](from_tree(args[0]), from_tree(args[1]))
    raise ValueError(f"unknown op {op!r}")


def to_interchange(f: Formula) -> str:
    return json.dumps(to_tree(f), separators=(",", ":"))


def from_interchange(text: str) -> Formula:
    """Inverse of :func:`to_interchange`; malformed documents raise ParseError(E_LEX)."""
    span = SourceSpan(0, len(text.encode()))
    try:
        return from_tree(json.loads(text))
    except (ValueError, TypeError, RecursionError) as exc:
        raise ParseError(E_LEX, span, f"in interchange document: {exc}") from None
