"""Model-description language.

Grammar (whitespace and ``#`` comments ignored)::

    file     := block
    block    := algebra | k3 | curve | quadform
    algebra  := "algebra" NAME "{" "dim" "=" INT ";" ["poincare" ";"]
                "gens" "{" NAME ":" INT ("," NAME ":" INT)* "}"
                ["rels" "{" (poly "=" poly ";")* "}"]
                ["integral" "{" (poly "=" rational ";")* "}"] "}"
    k3       := "k3" "{" "gram" "=" matrix ";" ["transcendental" "=" matrix ";"] "}"
    curve    := "curve" "{" "genus" "=" INT ";" "degree" "=" INT ";" "}"
    quadform := "quadform" "{" "gram" "=" matrix ";" "}"
    matrix   := "[" row ("," row)* "]"      row := "[" rational ("," rational)* "]"
    poly     := ["-"] term (("+" | "-") term)*
    term     := factor ("*" factor)*        factor := rational | (NAME | "(" poly ")") ["^" INT]
    rational := INT ["/" INT]

The last semicolon inside a block is optional.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..bb import QuadraticSpace
from ..gca import Presentation
from ..linalg import format_fraction
from ..models.base import ConfigError, CurveConfig, K3Config, default_transcendental


class ModelSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column, self.reason = line, column, message


class ModelSemanticError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line, self.column, self.reason = line, column, message


_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9']*)|(?P<sym>[{}\[\]();:,=+\-*/^])")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ModelSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind:
            out.append(Token(kind, m.group(), line, col))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ModelSyntaxError(message, tok.line, tok.column)

    def at(self, text) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def expect(self, text) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        t = self.tok
        self.pos += 1
        return t

    def accept(self, text) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def name(self) -> Token:
        if self.tok.kind != "name":
            raise self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        t = self.tok
        self.pos += 1
        return t

    def integer(self) -> int:
        neg = self.accept("-")
        if self.tok.kind != "int":
            raise self.error(f"expected an integer, found {self.tok.text or 'end of input'!r}")
        v = int(self.tok.text)
        self.pos += 1
        return -v if neg else v

    def rational(self) -> Fraction:
        neg = self.accept("-")
        if self.tok.kind != "int":
            raise self.error(f"expected a number, found {self.tok.text or 'end of input'!r}")
        v = Fraction(int(self.tok.text))
        self.pos += 1
        if self.accept("/"):
            den_tok = self.tok
            if den_tok.kind != "int":
                raise self.error(f"expected a denominator, found {den_tok.text or 'end of input'!r}")
            den = int(self.tok.text)
            self.pos += 1
            if den == 0:
                raise self.error("zero denominator", den_tok)
            v = v / den
        return -v if neg else v

    def matrix(self) -> list:
        self.expect("[")
        rows = [self.row()]
        while self.accept(","):
            rows.append(self.row())
        self.expect("]")
        return rows

    def row(self) -> list:
        self.expect("[")
        vals = [self.rational()]
        while self.accept(","):
            vals.append(self.rational())
        self.expect("]")
        return vals

    # polynomials: dict of exponent tuples over the declared generators
    def poly(self, gens: dict) -> dict:
        sign = -1 if self.accept("-") else 1
        out = self._scale(self.term(gens), sign)
        while self.at("+") or self.at("-"):
            sign = 1 if self.tok.text == "+" else -1
            self.pos += 1
            out = _poly_add(out, self._scale(self.term(gens), sign))
        return out

    @staticmethod
    def _scale(p, c):
        return {m: c * v for m, v in p.items()}

    def term(self, gens: dict) -> dict:
        out = self.factor(gens)
        while self.accept("*"):
            out = _poly_mul(out, self.factor(gens))
        return out

    def _exponent(self) -> int:
        tok = self.tok
        e = self.integer()
        if e < 0:
            raise self.error("negative exponent", tok)
        return e

    def factor(self, gens: dict) -> dict:
        n = len(gens)
        if self.accept("("):
            p = self.poly(gens)
            self.expect(")")
            if self.accept("^"):
                e = self._exponent()
                out = {(0,) * n: Fraction(1)}
                for _ in range(e):
                    out = _poly_mul(out, p)
                return out
            return p
        if self.tok.kind == "int":
            return {(0,) * n: self.rational()}
        t = self.name()
        if t.text not in gens:
            raise ModelSemanticError(f"unknown generator {t.text!r}", t.line, t.column)
        e = self._exponent() if self.accept("^") else 1
        m = [0] * n
        m[gens[t.text]] = e
        return {tuple(m): Fraction(1)}


def _poly_add(p, q):
    out = dict(p)
    for m, c in q.items():
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


def _poly_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _degree_set(poly, degrees):
    return {sum(e * d for e, d in zip(m, degrees)) for m in poly}


def _parse_algebra(P: _Parser) -> Presentation:
    name = P.name().text
    P.expect("{")
    P.expect("dim")
    P.expect("=")
    top = P.integer()
    P.expect(";")
    poincare = False
    if P.accept("poincare"):
        poincare = True
        P.expect(";")
    P.expect("gens")
    P.expect("{")
    gens, degrees, order = {}, [], []
    while True:
        t = P.name()
        if t.text in gens:
            raise ModelSemanticError(f"duplicate generator {t.text!r}", t.line, t.column)
        P.expect(":")
        d = P.integer()
        if d < 1:
            raise ModelSemanticError(f"generator {t.text!r} must have positive degree", t.line, t.column)
        gens[t.text] = len(order)
        order.append((t.text, d))
        degrees.append(d)
        if not P.accept(","):
            break
    P.expect("}")
    rels, integral = [], []
    if P.accept("rels"):
        P.expect("{")
        while not P.at("}"):
            start = P.tok
            lhs = P.poly(gens)
            P.expect("=")
            rhs = P.poly(gens)
            rel = _poly_add(lhs, P._scale(rhs, -1))
            if len(_degree_set(rel, degrees)) > 1:
                raise ModelSemanticError("inhomogeneous relation (terms of degrees "
                                         f"{sorted(_degree_set(rel, degrees))})", start.line, start.column)
            if rel:
                rels.append(rel)
            if not P.accept(";"):
                break
        P.expect("}")
    if P.accept("integral"):
        P.expect("{")
        while not P.at("}"):
            start = P.tok
            target = P.poly(gens)
            P.expect("=")
            value = P.rational()
            if _degree_set(target, degrees) != {top}:
                raise ModelSemanticError(f"integral must be assigned on degree {top}", start.line, start.column)
            integral.append((target, value))
            if not P.accept(";"):
                break
        P.expect("}")
    P.expect("}")
    return Presentation.make(name, order, top, rels, integral, poincare=poincare)


def _semantic(exc, tok):
    return ModelSemanticError(str(exc), tok.line, tok.column)


def _parse_k3(P: _Parser) -> K3Config:
    P.expect("{")
    start = P.expect("gram")
    P.expect("=")
    gram = P.matrix()
    trans = ()
    if P.accept(";") and P.at("transcendental"):
        P.pos += 1
        P.expect("=")
        trans = P.matrix()
        P.accept(";")
    P.expect("}")
    try:
        return K3Config(gram, trans)
    except ConfigError as exc:
        raise _semantic(exc, start) from None


def _parse_curve(P: _Parser) -> CurveConfig:
    P.expect("{")
    start = P.expect("genus")
    P.expect("=")
    g = P.integer()
    P.expect(";")
    P.expect("degree")
    P.expect("=")
    d = P.integer()
    P.accept(";")
    P.expect("}")
    try:
        return CurveConfig(g, d)
    except ConfigError as exc:
        raise _semantic(exc, start) from None


def _parse_quadform(P: _Parser) -> QuadraticSpace:
    P.expect("{")
    start = P.expect("gram")
    P.expect("=")
    gram = P.matrix()
    P.accept(";")
    P.expect("}")
    n = len(gram)
    if any(len(r) != n for r in gram):
        raise ModelSemanticError("gram matrix must be square", start.line, start.column)
    for i in range(n):
        for j in range(n):
            if gram[i][j] != gram[j][i]:
                raise ModelSemanticError(f"gram matrix is not symmetric at ({i}, {j})", start.line, start.column)
    return QuadraticSpace(gram)


def parse_model_file(text: str):
    """Parse one block; returns a Presentation, K3Config, CurveConfig or QuadraticSpace."""
    P = _Parser(text)
    t = P.tok
    kinds = {"algebra": _parse_algebra, "k3": _parse_k3, "curve": _parse_curve, "quadform": _parse_quadform}
    if t.text not in kinds or t.kind != "name":
        raise P.error("expected one of 'algebra', 'k3', 'curve', 'quadform'")
    P.pos += 1
    obj = kinds[t.text](P)
    if P.tok.kind != "eof":
        raise P.error(f"unexpected {P.tok.text!r} after the block")
    return obj


# ---------------------------------------------------------------------------
# canonical printing

def _fmt(c: Fraction) -> str:
    return format_fraction(Fraction(c))


def _format_matrix(m) -> str:
    return "[" + ", ".join("[" + ", ".join(_fmt(x) for x in row) + "]" for row in m) + "]"


def format_poly(poly, names) -> str:
    """Terms in lex-descending monomial order; ``0`` for the zero polynomial."""
    items = sorted(((tuple(m), Fraction(c)) for m, c in (poly.items() if isinstance(poly, dict) else poly)
                    if c), reverse=True)
    if not items:
        return "0"
    parts = []
    for k, (m, c) in enumerate(items):
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
        mag = abs(c)
        body = "*".join(([_fmt(mag)] if mag != 1 or not factors else []) + factors)
        if k == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def format_model(obj) -> str:
    """Canonical text; ``parse_model_file(format_model(x))`` reproduces x."""
    if isinstance(obj, Presentation):
        names = obj.generator_names
        lines = [f"algebra {obj.name} {{", f"  dim = {obj.top_degree};"]
        if obj.poincare:
            lines.append("  poincare;")
        lines.append("  gens { " + ", ".join(f"{n}: {d}" for n, d in obj.generators) + " }")
        if obj.relations:
            lines.append("  rels {")
            lines += [f"    {format_poly(r, names)} = 0;" for r in obj.relations]
            lines.append("  }")
        if obj.integral:
            lines.append("  integral {")
            lines += [f"    {format_poly(t, names)} = {_fmt(v)};" for t, v in obj.integral]
            lines.append("  }")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if isinstance(obj, K3Config):
        lines = ["k3 {", f"  gram = {_format_matrix(obj.picard)};"]
        if tuple(obj.transcendental) != default_transcendental(obj.rho):
            lines.append(f"  transcendental = {_format_matrix(obj.transcendental)};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if isinstance(obj, CurveConfig):
        return f"curve {{\n  genus = {obj.genus};\n  degree = {obj.degree};\n}}\n"
    if isinstance(obj, QuadraticSpace):
        return f"quadform {{\n  gram = {_format_matrix(obj.gram)};\n}}\n"
    raise TypeError(f"cannot format {type(obj).__name__}")
