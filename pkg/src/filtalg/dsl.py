"""Reader and printer for the ``.fa`` presentation language.

Grammar::

    file     := algebra+
    algebra  := 'algebra' NAME '{' 'gens' gen (',' gen)* ';'
                ('rel' poly ';')* ('central' NAME (',' NAME)* ';')? '}'
    gen      := NAME ':' INT
    poly     := ('+'|'-')? term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := NAME ('^' INT)? | INT ('/' INT)? | '(' poly ')'

``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ncalg import AlgebraError, NCPoly, Presentation, format_poly

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<int>\d+)
  | (?P<punct>[{}:;,*+\-/^()])
""", re.VERBOSE)

KEYWORDS = {"algebra", "gens", "rel", "central"}


class ParseError(AlgebraError):
    def __init__(self, msg, line=None, col=None):
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + msg)
        self.line = line
        self.col = col


class UnknownGenerator(ParseError):
    def __init__(self, name, line=None, col=None):
        super().__init__(f"unknown generator {name!r}", line, col)
        self.name = name


class DuplicateName(ParseError):
    def __init__(self, name, line=None, col=None):
        super().__init__(f"duplicate generator name {name!r}", line, col)
        self.name = name


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(src: str) -> list:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line,
                             pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, text, line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def expect(self, text=None, kind=None) -> Token:
        t = self.tok
        if text is not None and t.text != text:
            raise self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        if kind is not None and t.kind != kind:
            raise self.error(f"expected {kind}, found {t.text or 'end of input'!r}")
        return self.advance()

    def at(self, text) -> bool:
        return self.tok.text == text and self.tok.kind in ("punct", "name")

    # polynomials ---------------------------------------------------
    def poly(self, names) -> NCPoly:
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.advance().text == "-" else 1
        out = self.term(names).scale(sign)
        while self.at("+") or self.at("-"):
            sign = -1 if self.advance().text == "-" else 1
            out = out + self.term(names).scale(sign)
        return out

    def term(self, names) -> NCPoly:
        out = self.factor(names)
        while self.at("*"):
            self.advance()
            out = out * self.factor(names)
        return out

    def factor(self, names) -> NCPoly:
        t = self.tok
        if t.kind == "name" and t.text not in KEYWORDS:
            self.advance()
            if t.text not in names:
                raise UnknownGenerator(t.text, t.line, t.col)
            p = NCPoly.gen(names.index(t.text))
            if self.at("^"):
                self.advance()
                p = p ** int(self.expect(kind="int").text)
            return p
        if t.kind == "int":
            self.advance()
            num = int(t.text)
            if self.at("/"):
                self.advance()
                den = int(self.expect(kind="int").text)
                if den == 0:
                    raise self.error("zero denominator", t)
                return NCPoly.const(Fraction(num, den))
            return NCPoly.const(num)
        if self.at("("):
            self.advance()
            p = self.poly(names)
            self.expect(")")
            return p
        raise self.error(f"expected a generator, number or '(' but found "
                         f"{t.text or 'end of input'!r}")

    # algebras ------------------------------------------------------
    def algebra(self) -> Presentation:
        self.expect("algebra")
        name = self.expect(kind="name").text
        self.expect("{")
        self.expect("gens")
        gens, degs = [], []
        while True:
            t = self.expect(kind="name")
            if t.text in KEYWORDS:
                raise self.error(f"{t.text!r} is a keyword", t)
            if t.text in gens:
                raise DuplicateName(t.text, t.line, t.col)
            self.expect(":")
            d = self.expect(kind="int")
            gens.append(t.text)
            degs.append(int(d.text))
            if self.at(","):
                self.advance()
                continue
            self.expect(";")
            break
        rels, central = [], []
        while self.at("rel"):
            self.advance()
            rels.append(self.poly(gens))
            self.expect(";")
        if self.at("central"):
            self.advance()
            while True:
                t = self.expect(kind="name")
                if t.text not in gens:
                    raise UnknownGenerator(t.text, t.line, t.col)
                central.append(t.text)
                if self.at(","):
                    self.advance()
                    continue
                self.expect(";")
                break
        self.expect("}")
        return Presentation(tuple(gens), tuple(degs), tuple(rels), tuple(central), name)


def parse_poly(text: str, names: Sequence[str]) -> NCPoly:
    p = _Parser(tokenize(text))
    out = p.poly(list(names))
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    return out


def parse_file(src: str) -> list:
    p = _Parser(tokenize(src))
    out = []
    while p.tok.kind != "eof":
        out.append(p.algebra())
    if not out:
        raise ParseError("no algebra block found", 1, 1)
    return out


def parse_presentation(src: str) -> Presentation:
    """Parse a source text holding exactly one algebra block."""
    algs = parse_file(src)
    if len(algs) != 1:
        raise ParseError(f"expected one algebra block, found {len(algs)}")
    return algs[0]


def print_presentation(pres: Presentation) -> str:
    lines = [f"algebra {pres.name} {{"]
    gens = ", ".join(f"{g}:{d}" for g, d in zip(pres.gens, pres.degrees))
    lines.append(f"  gens {gens};")
    for r in pres.relations:
        lines.append(f"  rel {format_poly(r, pres.gens, pres.order())};")
    if pres.central:
        lines.append(f"  central {', '.join(pres.central)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
