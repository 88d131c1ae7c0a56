"""Concrete syntax for processes and formulae.

Processes::

    process := sum
    sum     := par ('+' par)*
    par     := prefix ('|' prefix)*
    prefix  := '0' | 'tau' '.' prefix | x '!' y '.' prefix | x '?(' y ')' '.' prefix
             | '[' x '=' y ']' prefix | 'nu(' x ')' prefix | '(' process ')'

Formulae::

    f    := 'tt' | 'ff' | 'and[' f,* ']' | 'or[' f,* ']'
          | '<' act '>' f | '[' act ']' f | '<' eqs '>' f | '[' eqs ']' f
    act  := 'tau' | x '!' y | x '!(' z ')' | x '?(' z ')'
    eqs  := x '=' y (',' x '=' y)*

A name ending in ``_<digits>`` denotes that index of its base, so ``x_2`` reads
back exactly what the pretty-printer writes for a generated name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    Box,
    BoxB,
    BoxMatch,
    BoundIn,
    BoundOut,
    Conj,
    Dia,
    DiaB,
    DiaMatch,
    Disj,
    FF,
    Form,
    FreeOut,
    In,
    Match,
    Name,
    Nu,
    Null,
    Out,
    Par,
    Plus,
    Pr,
    TT,
    Tau,
    TauPrefix,
    V,
    bind,
    observe,
)

KEYWORDS = frozenset({"tau", "nu", "tt", "ff", "and", "or"})
PLACEHOLDER = "?"

_TOKEN = re.compile(r"\s*(?:([a-z][A-Za-z0-9_]*)|(0)|([.!?()\[\]=+|<>,]))")
_INDEXED = re.compile(r"^(.+?)_(\d+)$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class _Tok:
    kind: str  # "name", "zero", "punct", "eof"
    text: str
    pos: int


def decode_name(text: str) -> Name:
    m = _INDEXED.match(text)
    if m:
        return Name(m.group(1), int(m.group(2)))
    return Name(text)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = self._lex(text)
        self.i = 0

    def _where(self, pos: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        return ParseError(message, *self._where(tok.pos))

    def _lex(self, text: str) -> list[_Tok]:
        toks = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                toks.append(_Tok("eof", "", pos))
                return toks
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", *self._where(pos))
            start = m.start(m.lastindex)
            if m.group(1) is not None:
                toks.append(_Tok("name", m.group(1), start))
            elif m.group(2) is not None:
                toks.append(_Tok("zero", "0", start))
            else:
                toks.append(_Tok("punct", m.group(3), start))
            pos = m.end()

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> _Tok:
        tok = self.peek()
        self.i += 1
        return tok

    def at(self, text: str, k: int = 0) -> bool:
        tok = self.peek(k)
        return tok.kind in ("punct", "name", "zero") and tok.text == text

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            tok = self.peek()
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.next()

    def name(self) -> Name:
        tok = self.peek()
        if tok.kind == "punct" and tok.text == PLACEHOLDER:
            raise self.error(f"{PLACEHOLDER!r} is reserved and cannot be used as a name")
        if tok.kind != "name":
            raise self.error(f"expected a name, found {tok.text or 'end of input'!r}")
        if tok.text in KEYWORDS:
            raise self.error(f"{tok.text!r} is a keyword and cannot be used as a name")
        self.next()
        n = decode_name(tok.text)
        observe(n)
        return n

    def finish(self):
        if self.peek().kind != "eof":
            raise self.error(f"unexpected {self.peek().text!r}")

    # -- processes --

    def process(self) -> Pr:
        p = self.par()
        while self.at("+"):
            self.next()
            p = Plus(p, self.par())
        return p

    def par(self) -> Pr:
        p = self.prefix()
        while self.at("|"):
            self.next()
            p = Par(p, self.prefix())
        return p

    def prefix(self) -> Pr:
        tok = self.peek()
        if tok.kind == "zero":
            self.next()
            return Null()
        if self.at("("):
            self.next()
            p = self.process()
            self.expect(")")
            return p
        if self.at("["):
            self.next()
            x = self.name()
            self.expect("=")
            y = self.name()
            self.expect("]")
            return Match(V(x), V(y), self.prefix())
        if self.at("tau"):
            self.next()
            self.expect(".")
            return TauPrefix(self.prefix())
        if self.at("nu") and self.at("(", 1):
            self.next()
            self.next()
            x = self.name()
            self.expect(")")
            return Nu(bind(x, self.prefix()))
        if tok.kind == "name":
            x = self.name()
            if self.at("!"):
                self.next()
                y = self.name()
                self.expect(".")
                return Out(V(x), V(y), self.prefix())
            if self.at("?"):
                self.next()
                self.expect("(")
                y = self.name()
                self.expect(")")
                self.expect(".")
                return In(V(x), bind(y, self.prefix()))
            raise self.error("expected '!' or '?' after a channel name")
        raise self.error(f"expected a process, found {tok.text or 'end of input'!r}")

    # -- formulae --

    def formula(self) -> Form:
        tok = self.peek()
        if self.at("tt"):
            self.next()
            return TT()
        if self.at("ff"):
            self.next()
            return FF()
        if (self.at("and") or self.at("or")) and self.at("[", 1):
            ctor = Conj if self.next().text == "and" else Disj
            self.expect("[")
            parts = []
            if not self.at("]"):
                parts.append(self.formula())
                while self.at(","):
                    self.next()
                    parts.append(self.formula())
            self.expect("]")
            return ctor(tuple(parts))
        if self.at("<") or self.at("["):
            dia = self.next().text == "<"
            close = ">" if dia else "]"
            return self.modality(dia, close)
        raise self.error(f"expected a formula, found {tok.text or 'end of input'!r}")

    def binder(self) -> Name:
        if self.at(PLACEHOLDER):
            self.next()
            return Name(PLACEHOLDER)
        return self.name()

    def modality(self, dia: bool, close: str) -> Form:
        if self.at("tau"):
            self.next()
            self.expect(close)
            return (Dia if dia else Box)(Tau(), self.formula())
        x = self.name()
        if self.at("="):
            self.next()
            eqs = [(V(x), V(self.name()))]
            while self.at(","):
                self.next()
                a = self.name()
                self.expect("=")
                eqs.append((V(a), V(self.name())))
            self.expect(close)
            return (DiaMatch if dia else BoxMatch)(tuple(eqs), self.formula())
        if self.at("!") and not self.at("(", 1):
            self.next()
            y = self.name()
            self.expect(close)
            return (Dia if dia else Box)(FreeOut(V(x), V(y)), self.formula())
        if self.at("!") or self.at("?"):
            act = BoundOut(V(x)) if self.next().text == "!" else BoundIn(V(x))
            self.expect("(")
            z = self.binder()
            self.expect(")")
            self.expect(close)
            return (DiaB if dia else BoxB)(act, bind(z, self.formula()))
        raise self.error("expected '=', '!' or '?' in a modality")


def parse_process(text: str) -> Pr:
    ps = _Parser(text)
    p = ps.process()
    ps.finish()
    return p


def parse_formula(text: str) -> Form:
    ps = _Parser(text)
    f = ps.formula()
    ps.finish()
    return f
