"""The ``.dga`` text format for free DGAs with an optional augmentation.

Line-oriented::

    # comment
    field Q                      # or a prime: field 2, field 3, ...
    gen a : 1
    gen x : 0
    diff a = 1 - x*x + 3/2*x
    aug x = -1

Terms are a coefficient, a ``*``-separated word of generators, or a
coefficient followed by ``*`` and a word.  ``1`` is the unit.  Words are
noncommutative.  A generator without a ``diff`` line has zero
differential.  Every name must be declared by a ``gen`` line before it is
used.  The grammar is written out in ``docs/dga-format.md``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .dga import Augmentation, FreeDGA
from .fields import Field, FieldError, field as as_field
from .freealg import Generator, NCPoly, format_poly


class DGAParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\f\v]+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<int>[0-9]+)|(?P<op>[-+*/:=])"
)


@dataclass
class Token:
    kind: str
    text: str
    col: int


def _tokens(line: str, lineno: int) -> list[Token]:
    out = []
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if not m:
            raise DGAParseError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos + 1))
        pos = m.end()
    return out


@dataclass
class DGADocument:
    field: Field
    generators: list = dc_field(default_factory=list)
    differential: dict = dc_field(default_factory=dict)
    augmentation: dict | None = None

    def dga(self) -> FreeDGA:
        return FreeDGA(self.field, self.generators, self.differential)

    def augmentation_map(self) -> Augmentation | None:
        if self.augmentation is None:
            return None
        return Augmentation(self.field, self.augmentation)


class _Line:
    def __init__(self, toks: list[Token], lineno: int, end_col: int):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.end_col = end_col

    def peek(self) -> Token | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def fail(self, msg: str, tok: Token | None = None):
        col = tok.col if tok else (self.peek().col if self.peek() else self.end_col)
        raise DGAParseError(msg, self.lineno, col)

    def next(self, kind: str | None = None, text: str | None = None, what: str = "") -> Token:
        t = self.peek()
        if t is None or (kind and t.kind != kind) or (text and t.text != text):
            found = repr(t.text) if t else "end of line"
            self.fail(f"expected {what or text or kind}, found {found}")
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.text == text

    def done(self):
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek().text!r}")


def _int(ln: _Line, tok: Token) -> int:
    try:
        return int(tok.text)
    except ValueError:
        ln.fail("number too long", tok)


def _scalar(ln: _Line, K: Field, allow_sign: bool = True):
    neg = False
    if allow_sign and ln.at("-"):
        ln.next()
        neg = True
    num = ln.next("int", what="a number")
    value = Fraction(_int(ln, num))
    if ln.at("/"):
        ln.next()
        den = ln.next("int", what="a denominator")
        d = _int(ln, den)
        if d == 0:
            ln.fail("division by zero", den)
        value = value / d
    if neg:
        value = -value
    try:
        return K(value)
    except (ZeroDivisionError, FieldError, ValueError):
        ln.fail(f"denominator is zero in F_{K.char}", num)


def _word(ln: _Line, declared: dict) -> tuple:
    names = []
    while True:
        t = ln.next("name", what="a generator name")
        if t.text not in declared:
            ln.fail(f"undeclared generator {t.text!r}", t)
        names.append(t.text)
        if not ln.at("*"):
            return tuple(names)
        ln.next()


def _expr(ln: _Line, K: Field, declared: dict) -> NCPoly:
    terms: dict = {}
    sign = 1
    first = True
    while True:
        t = ln.peek()
        if t is not None and t.text in "+-" and t.kind == "op":
            ln.next()
            sign = -1 if t.text == "-" else 1
        elif not first:
            ln.fail("expected '+' or '-'")
        t = ln.peek()
        if t is None:
            ln.fail("expected a term")
        if t.kind == "int":
            c = _scalar(ln, K, allow_sign=False)
            w: tuple = ()
            if ln.at("*"):
                ln.next()
                w = _word(ln, declared)
        elif t.kind == "name":
            c = K.one
            w = _word(ln, declared)
        else:
            ln.fail(f"expected a term, found {t.text!r}", t)
        terms[w] = K.reduce(terms.get(w, K.zero) + sign * c)
        first = False
        sign = 1
        if ln.peek() is None:
            break
    return NCPoly(K, terms)


def parse(text) -> DGADocument:
    """Parse ``.dga`` text (str or UTF-8 bytes)."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as e:
            prefix = bytes(text)[: e.start]
            line = prefix.count(b"\n") + 1
            col = len(prefix) - (prefix.rfind(b"\n") + 1) + 1
            raise DGAParseError("invalid UTF-8", line, col) from None
    K: Field | None = None
    field_line = 0
    declared: dict = {}
    gens: list = []
    diffs: dict = {}
    diff_lines: dict = {}
    aug: dict | None = None
    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line, lineno)
        if not toks:
            continue
        ln = _Line(toks, lineno, len(line.rstrip()) + 1)
        kw = ln.next("name", what="a statement keyword")
        if kw.text == "field":
            if K is not None:
                ln.fail(f"field already declared on line {field_line}", kw)
            t = ln.peek()
            if t is not None and t.kind == "name" and t.text == "Q":
                ln.next()
                K = as_field(0)
            else:
                num = ln.next("int", what="a prime or Q")
                try:
                    p = _int(ln, num)
                    if p == 0:
                        raise FieldError("0")
                    K = as_field(p)
                except FieldError:
                    ln.fail(f"field modulus {num.text} is not a prime below 2^31", num)
            field_line = lineno
            ln.done()
        elif kw.text == "gen":
            name = ln.next("name", what="a generator name")
            if name.text in declared:
                ln.fail(f"generator {name.text!r} already declared", name)
            ln.next(text=":")
            neg = ln.at("-")
            if neg:
                ln.next()
            deg = _int(ln, ln.next("int", what="an integer degree"))
            ln.done()
            declared[name.text] = -deg if neg else deg
            gens.append(Generator(name.text, declared[name.text]))
        elif kw.text in ("diff", "aug"):
            if K is None:
                ln.fail("field must be declared first", kw)
            name = ln.next("name", what="a generator name")
            if name.text not in declared:
                ln.fail(f"undeclared generator {name.text!r}", name)
            ln.next(text="=")
            if kw.text == "diff":
                if name.text in diffs:
                    ln.fail(f"differential of {name.text!r} already given on line {diff_lines[name.text]}", name)
                diffs[name.text] = _expr(ln, K, declared)
                diff_lines[name.text] = lineno
            else:
                aug = {} if aug is None else aug
                if name.text in aug:
                    ln.fail(f"augmentation of {name.text!r} already given", name)
                aug[name.text] = _scalar(ln, K)
                ln.done()
        else:
            ln.fail(f"unknown statement {kw.text!r}", kw)
    if K is None:
        raise DGAParseError("missing field declaration", 1, 1)
    return DGADocument(K, gens, diffs, aug)


def load(path) -> DGADocument:
    with open(path, "rb") as f:
        return parse(f.read())


def serialize(d: FreeDGA, eps: Augmentation | None = None) -> str:
    """Deterministic ``.dga`` text; ``parse`` inverts it."""
    lines = [f"field {d.field.name}"]
    lines += [f"gen {g.name} : {g.degree}" for g in d.generators]
    for g in d.generators:
        img = d.differential[g.name]
        if img:
            lines.append(f"diff {g.name} = {format_poly(img)}")
    if eps is not None:
        for g in d.names:
            v = eps(g)
            if v:
                lines.append(f"aug {g} = {_render_scalar(d.field, v)}")
    return "\n".join(lines) + "\n"


def _render_scalar(K: Field, v) -> str:
    return K.render(v)
