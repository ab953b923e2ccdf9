"""Precedence-climbing parser for the ASCII formula grammar.

Grammar, loosest first::

    formula := disj ( ('->' | '<->') formula )?      right associative
    disj    := conj ( '|' conj )*
    conj    := unary ( '&' unary )*
    unary   := ('~' | '[]' | '<>' | '[R]' | '<R>') unary | atom | '(' formula ')'
    atom    := 'bot' | 'top' | ident | '#{' formula '}'

Unicode aliases (⊥ ⊤ ¬ ∧ ∨ → ↔ □ ◇ ◾ ◆) are accepted.  ``#{D}`` denotes the
indexed atom q_D, so translated formulas can be read back in.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .formula import BOT, TOP, Atom, Box, Formula, Indexed, Named, Neg, Or, RBox, conj, iff, implies


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: frozenset[str] = frozenset()):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f" (expected one of: {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{line}:{column}: {message}{detail}")


_TOKEN_SPEC = [
    ("WS", r"\s+"),
    ("IFF", r"<->|↔"),
    ("IMP", r"->|→"),
    ("RDIA", r"<R>|◆"),
    ("DIA", r"<>|◇"),
    ("RBOX", r"\[R\]|◾|■"),
    ("BOX", r"\[\]|□"),
    ("NOT", r"~|¬"),
    ("AND", r"&|∧"),
    ("OR", r"\||∨"),
    ("LP", r"\("),
    ("RP", r"\)"),
    ("IDX", r"#\{"),
    ("RB", r"\}"),
    ("BOT", r"⊥"),
    ("TOP", r"⊤"),
    ("ID", r"[a-z][a-zA-Z0-9_]*"),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{n}>{p})" for n, p in _TOKEN_SPEC))

_PREFIX = {"NOT", "BOX", "DIA", "RBOX", "RDIA"}
_ATOM_START = {"identifier", "bot", "top", "(", "#{", "~", "[]", "<>", "[R]", "<R>"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, frozenset(_ATOM_START))
        kind = m.lastgroup
        tok = m.group()
        if kind == "WS":
            nl = tok.count("\n")
            if nl:
                line += nl
                line_start = pos + tok.rfind("\n") + 1
        else:
            if kind == "ID" and tok in ("bot", "top"):
                kind = tok.upper()
            out.append(Token(kind, tok, line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("EOF", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, tok: Token, expected: set[str]):
        what = "end of input" if tok.kind == "EOF" else repr(tok.text)
        raise ParseError(f"unexpected {what}", tok.line, tok.column, frozenset(expected))

    def expect(self, kind: str, shown: str):
        tok = self.peek()
        if tok.kind != kind:
            self.fail(tok, {shown})
        return self.advance()

    def formula(self) -> Formula:
        left = self.disj()
        tok = self.peek()
        if tok.kind == "IMP":
            self.advance()
            return implies(left, self.formula())
        if tok.kind == "IFF":
            self.advance()
            return iff(left, self.formula())
        return left

    def disj(self) -> Formula:
        out = self.conj()
        while self.peek().kind == "OR":
            self.advance()
            out = Or(out, self.conj())
        return out

    def conj(self) -> Formula:
        out = self.unary()
        while self.peek().kind == "AND":
            self.advance()
            out = conj(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.advance()
        k = tok.kind
        if k == "NOT":
            return Neg(self.unary())
        if k == "BOX":
            return Box(self.unary())
        if k == "RBOX":
            return RBox(self.unary())
        if k == "DIA":
            return Neg(Box(Neg(self.unary())))
        if k == "RDIA":
            return Neg(RBox(Neg(self.unary())))
        if k == "BOT":
            return BOT
        if k == "TOP":
            return TOP
        if k == "ID":
            return Atom(Named(tok.text))
        if k == "IDX":
            payload = self.formula()
            self.expect("RB", "}")
            return Atom(Indexed(payload))
        if k == "LP":
            inner = self.formula()
            self.expect("RP", ")")
            return inner
        self.i -= 1
        self.fail(tok, _ATOM_START)


def parse(text: str) -> Formula:
    """Parse formula text into the six-constructor AST."""
    p = _Parser(text)
    f = p.formula()
    tok = p.peek()
    if tok.kind != "EOF":
        p.fail(tok, {"&", "|", "->", "<->", "end of input"})
    return f
