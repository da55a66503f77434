"""Recursive-descent parser and canonical printer for algebra elements.

Grammar (scalars and algebra elements share one expression language; the
evaluator tracks which kind each subexpression is)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('+' | '-') unary | power
    power := atom ['^' INT]
    atom  := INT | 't' | 'x' INT | '[' expr ',' expr ']' | '(' expr ')'

``t`` is only available over ``Q[t]``; ``/`` divides by a nonzero constant
and is rejected over ``Z``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .euclid_ring import Poly, RingError, QQt
from .free_algebra import AlgebraElement, FreeAlgebra, format_word


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1, token: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        where = f"line {line}, column {column}"
        if token:
            where += f", near {token!r}"
        super().__init__(f"{message} ({where})")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(x\d+)|(t)|([-+*/^,\[\]()])|(\S))")


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            if text[pos] == "\n":
                line += 1
                line_start = pos + 1
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        col = m.start(m.lastindex) - line_start + 1
        num, gen, t, op, bad = m.groups()
        if bad is not None:
            # identifiers such as "x" or "y2" are reported whole
            word = re.match(r"[A-Za-z_]\w*|\S", text[m.start(m.lastindex):]).group(0)
            raise ParseError("unexpected character", line, col, word)
        if num is not None:
            tokens.append(Token("int", num, line, col))
        elif gen is not None:
            tokens.append(Token("gen", gen, line, col))
        elif t is not None:
            tokens.append(Token("t", t, line, col))
        else:
            tokens.append(Token(op, op, line, col))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Scalar:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value


class _Parser:
    def __init__(self, text: str, ring, algebra: Optional[FreeAlgebra]):
        self.tokens = tokenize(text)
        self.i = 0
        self.ring = ring
        self.algebra = algebra

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column, tok.text)

    def expect(self, kind: str) -> Token:
        tok = self.tok
        if tok.kind != kind:
            self.error(f"expected {kind!r}" if kind != "end" else "unexpected trailing input")
        self.i += 1
        return tok

    def parse(self):
        value = self.expr()
        self.expect("end")
        return value

    # values are either _Scalar or AlgebraElement

    def _is_zero_scalar(self, v) -> bool:
        return isinstance(v, _Scalar) and not v.value

    def combine(self, a, b, sign: int, tok: Token):
        if isinstance(a, _Scalar) and isinstance(b, _Scalar):
            return _Scalar(a.value + b.value if sign > 0 else a.value - b.value)
        if self._is_zero_scalar(a):
            return b if sign > 0 else -b
        if self._is_zero_scalar(b):
            return a
        if isinstance(a, _Scalar) or isinstance(b, _Scalar):
            self.error("cannot add a scalar to an algebra element", tok)
        return a + b if sign > 0 else a - b

    def expr(self):
        value = self.term()
        while self.tok.kind in "+-":
            tok = self.tok
            self.i += 1
            rhs = self.term()
            value = self.combine(value, rhs, 1 if tok.kind == "+" else -1, tok)
        return value

    def term(self):
        value = self.unary()
        while self.tok.kind in ("*", "/"):
            tok = self.tok
            self.i += 1
            rhs = self.unary()
            if tok.kind == "*":
                value = self.multiply(value, rhs, tok)
            else:
                value = self.divide(value, rhs, tok)
        return value

    def multiply(self, a, b, tok):
        if isinstance(a, _Scalar) and isinstance(b, _Scalar):
            return _Scalar(a.value * b.value)
        if isinstance(a, _Scalar):
            return b.scale(a.value)
        if isinstance(b, _Scalar):
            return a.scale(b.value)
        self.error("product of two algebra elements must be written as a bracket [f, g]", tok)

    def divide(self, a, b, tok):
        if not isinstance(b, _Scalar):
            self.error("cannot divide by an algebra element", tok)
        if not isinstance(a, _Scalar):
            self.error("cannot divide an algebra element; scale by a scalar instead", tok)
        if self.ring is not QQt:
            self.error(f"division is not available in {self.ring.name}", tok)
        d = b.value
        if not d or not d.is_const():
            self.error("division only by a nonzero constant", tok)
        return _Scalar(a.value * Poly.const(1 / d.coeffs[0]))

    def unary(self):
        if self.tok.kind in "+-":
            tok = self.tok
            self.i += 1
            v = self.unary()
            if tok.kind == "+":
                return v
            return _Scalar(-v.value) if isinstance(v, _Scalar) else -v
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "^":
            tok = self.tok
            self.i += 1
            exp_tok = self.expect("int")
            if not isinstance(base, _Scalar):
                self.error("powers of algebra elements are not defined", tok)
            e = int(exp_tok.text)
            out = self.ring.one
            for _ in range(e):
                out = out * base.value
            return _Scalar(out)
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return _Scalar(self.ring.from_int(int(tok.text)))
        if tok.kind == "t":
            if self.ring is not QQt:
                self.error(f"indeterminate t is not available in {self.ring.name}")
            self.i += 1
            return _Scalar(Poly((0, 1)))
        if tok.kind == "gen":
            if self.algebra is None:
                self.error("generator in a scalar literal")
            idx = int(tok.text[1:])
            if not 1 <= idx <= self.algebra.rank:
                self.error(f"generator index {idx} outside rank {self.algebra.rank}")
            self.i += 1
            return self.algebra.gen(idx)
        if tok.kind == "[":
            self.i += 1
            left = self.expr()
            comma = self.expect(",")
            right = self.expr()
            self.expect("]")
            left = self.as_element(left, tok)
            right = self.as_element(right, comma)
            return self.algebra.bracket(left, right)
        if tok.kind == "(":
            self.i += 1
            v = self.expr()
            self.expect(")")
            return v
        if tok.kind == "end":
            self.error("unexpected end of input")
        self.error("unexpected token")

    def as_element(self, v, tok):
        if isinstance(v, _Scalar):
            if not v.value and self.algebra is not None:
                return self.algebra.zero
            self.error("bracket operands must be algebra elements", tok)
        return v


def parse_expression(text: str, algebra: FreeAlgebra) -> AlgebraElement:
    value = _Parser(text, algebra.ring, algebra).parse()
    if isinstance(value, _Scalar):
        if not value.value:
            return algebra.zero
        tok = Token("end", text.strip(), 1, 1)
        raise ParseError("a nonzero scalar is not an element of the algebra", tok.line, tok.column, tok.text)
    return value


def parse_scalar(text: str, ring):
    try:
        value = _Parser(text, ring, None).parse()
    except ParseError as exc:
        raise RingError(f"malformed scalar {text!r}: {exc}") from None
    return value.value


def format_scalar(ring, c) -> str:
    s = ring.format(c)
    return s if ring.is_atomic_display(c) else f"({s})"


def format_element(f: AlgebraElement, names=None) -> str:
    """Canonical text: terms in descending word order, explicit brackets."""
    if not f.terms:
        return "0"
    ring = f.ring
    one = ring.one
    out = []
    for k, (w, c) in enumerate(f.items()):
        neg = ring.is_negative_display(c)
        mag = -c if neg else c
        ws = format_word(w, names)
        body = ws if mag == one else f"{format_scalar(ring, mag)}*{ws}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
