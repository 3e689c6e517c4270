"""Surface syntax for trace maps.

Grammar (loosest to tightest)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)*          # right-associative, integer exponents
    atom   := 'x' | 'I' | NUMBER | ('tr' | 'det' | 'adj') '(' expr ')' | '(' expr ')'

``NUMBER`` is an integer or ``p/q`` written without spaces.  Expressions are
typed: ``x`` and ``I`` are matrices, ``tr``/``det`` produce scalars, a scalar
may multiply a matrix, but a matrix and a scalar cannot be added.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ExprTypeError, NotHomogeneous, ParseError
from .polymat import PolyMatrix, faddeev_leverrier, generic_matrix, identity
from .polyring import Polynomial
from .tracemaps import ScalarPoly, TraceMap

__all__ = [
    "Expr", "X", "Ident", "Num", "Tr", "Det", "Adj", "Neg", "Add", "Sub", "Mul", "Pow",
    "parse", "pretty", "elaborate", "elaborate_text",
]


@dataclass(frozen=True)
class X:
    pass


@dataclass(frozen=True)
class Ident:
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Tr:
    arg: "Expr"


@dataclass(frozen=True)
class Det:
    arg: "Expr"


@dataclass(frozen=True)
class Adj:
    arg: "Expr"


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[X, Ident, Num, Tr, Det, Adj, Neg, Add, Sub, Mul, Pow]

_FUNCS = {"tr": Tr, "det": Det, "adj": Adj}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, name, op, end
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = mt.lastgroup
        if kind == "ws":
            chunk = mt.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        else:
            toks.append(_Tok(kind, mt.group(), line, pos - line_start + 1))
        pos = mt.end()
    toks.append(_Tok("end", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected: tuple[str, ...]) -> ParseError:
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        return ParseError(f"unexpected {found}", t.line, t.col, expected)

    def eat(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.eat(text):
            raise self.fail((repr(text),))

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise self.fail(("'+'", "'-'", "'*'", "'^'", "end of input"))
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            if self.eat("+"):
                e = Add(e, self.term())
            elif self.eat("-"):
                e = Sub(e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.unary()
        while self.eat("*"):
            e = Mul(e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.eat("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        self.expect("^")
        t = self.tok
        if t.kind != "num" or "/" in t.text:
            raise self.fail(("non-negative integer exponent",))
        self.i += 1
        value = int(t.text)
        if self.tok.kind == "op" and self.tok.text == "^":
            value = value ** self.exponent()
        return value

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Num(Fraction(t.text))
        if t.kind == "name":
            if t.text == "x":
                self.i += 1
                return X()
            if t.text == "I":
                self.i += 1
                return Ident()
            if t.text in _FUNCS:
                self.i += 1
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return _FUNCS[t.text](arg)
            raise ParseError(f"unknown name {t.text!r}", t.line, t.col,
                             ("'x'", "'I'", "'tr'", "'det'", "'adj'"))
        if self.eat("("):
            e = self.expr()
            self.expect(")")
            return e
        raise self.fail(("'x'", "'I'", "number", "'tr'", "'det'", "'adj'", "'('", "'-'"))


def parse(text: str) -> Expr:
    """Parse an expression; raises :class:`ParseError` with a position."""
    return _Parser(text).parse()


# -- pretty printing ---------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Neg: 3, Pow: 4}


def _prec(e: Expr) -> int:
    return _PREC.get(type(e), 5)


def pretty(e: Expr) -> str:
    """Inverse of :func:`parse` up to whitespace and redundant parentheses."""
    if isinstance(e, X):
        return "x"
    if isinstance(e, Ident):
        return "I"
    if isinstance(e, Num):
        v = e.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(e, (Tr, Det, Adj)):
        return f"{type(e).__name__.lower()}({pretty(e.arg)})"
    if isinstance(e, Neg):
        inner = _wrap(e.arg, 3)
        return "-" + (" " + inner if inner.startswith("-") else inner)
    if isinstance(e, Pow):
        return f"{_wrap(e.base, 5)}^{e.exponent}"
    op = {Add: " + ", Sub: " - ", Mul: "*"}[type(e)]
    p = _prec(e)
    return _wrap(e.left, p) + op + _wrap(e.right, p + 1)


def _wrap(e: Expr, min_prec: int) -> str:
    s = pretty(e)
    return f"({s})" if _prec(e) < min_prec else s


# -- elaboration -------------------------------------------------------------

def _value(e: Expr, n: int):
    """Bottom-up evaluation to a PolyMatrix (matrix) or Polynomial (scalar)."""
    if isinstance(e, X):
        return generic_matrix(n)
    if isinstance(e, Ident):
        return identity(n)
    if isinstance(e, Num):
        return Polynomial.constant(n, e.value)
    if isinstance(e, (Tr, Det, Adj)):
        arg = _value(e.arg, n)
        name = type(e).__name__.lower()
        if not isinstance(arg, PolyMatrix):
            raise ExprTypeError(f"{name}() needs a matrix argument, got a scalar in {pretty(e)!r}")
        if isinstance(e, Tr):
            return arg.trace()
        data = faddeev_leverrier(arg)
        return data.determinant if isinstance(e, Det) else data.adjugate
    if isinstance(e, Neg):
        return -_value(e.arg, n)
    if isinstance(e, Pow):
        return _value(e.base, n) ** e.exponent
    left, right = _value(e.left, n), _value(e.right, n)
    if isinstance(e, Mul):
        if isinstance(left, PolyMatrix) and isinstance(right, PolyMatrix):
            return left @ right
        return left * right
    if isinstance(left, PolyMatrix) != isinstance(right, PolyMatrix):
        raise ExprTypeError(f"cannot add a matrix and a scalar in {pretty(e)!r}; "
                            "multiply the scalar by I")
    return left + right if isinstance(e, Add) else left - right


def elaborate(e: Expr, n: int) -> Union[TraceMap, ScalarPoly]:
    """Evaluate over the generic n x n matrix and infer the degree."""
    value = _value(e, n)
    try:
        if isinstance(value, PolyMatrix):
            return TraceMap.of(value)
        return ScalarPoly.of(value)
    except NotHomogeneous as exc:
        raise NotHomogeneous(f"{pretty(e)!r} is not homogeneous: {exc}") from None


def elaborate_text(text: str, n: int) -> Union[TraceMap, ScalarPoly]:
    return elaborate(parse(text), n)
