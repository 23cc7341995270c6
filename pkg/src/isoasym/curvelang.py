"""Expression language for analytic space curves.

Curves are defined componentwise by expressions in the single variable `w`.
The grammar (normative):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ('-')? power
    power  := atom ('^' atom)?
    atom   := NUMBER | 'w' | 'pi' | FUNC '(' expr ')' | '(' expr ')'
    FUNC   := 'sin' | 'cos' | 'sqrt' | 'exp' | 'ln'

'+','-','*','/' are left-associative; '^' binds tighter than unary minus and
requires a constant-foldable right operand (the parser folds it to a number,
so `w^(1+1)` stores exponent 2.0). Function application requires parentheses.
Expressions evaluate over Jet3, yielding exact derivatives to order three.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import DegenerateCurve, DomainError, ExprSyntaxError, UnknownIdentifier
from .jets import Jet3, jet_add, jet_const, jet_div, jet_elem, jet_mul, jet_sub, jet_var

__all__ = [
    "Expr",
    "Number",
    "Var",
    "Unary",
    "Binary",
    "ParamCurve",
    "parse_expr",
    "to_string",
    "eval_jet",
    "helix",
    "circle",
    "curve_from_exprs",
    "curve_point",
    "curve_derivatives",
    "check_regularity",
    "FUNCTIONS",
]

FUNCTIONS = ("sin", "cos", "sqrt", "exp", "ln")

EPS_REG = 1e-9


@dataclass(frozen=True)
class Number:
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"expression constants must be finite, got {self.value}")


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    op: str  # 'neg' or a FUNCTIONS entry
    arg: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


Expr = Union[Number, Var, Unary, Binary]

_TOKEN = re.compile(
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, symbol: str):
        kind, value, pos = self.peek()
        if kind == "op" and value == symbol:
            return self.advance()
        raise ExprSyntaxError(f"expected {symbol!r}, found {value or 'end of input'!r}", pos)

    def parse(self) -> Expr:
        e = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected trailing input {value!r}", pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                e = Binary(value, e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "*/":
                self.advance()
                e = Binary(value, e, self.factor())
            else:
                return e

    def factor(self) -> Expr:
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return Unary("neg", self.power())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        kind, value, pos = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            exponent = self.atom()
            folded = _fold_const(exponent)
            if folded is None:
                raise ExprSyntaxError("exponent of '^' must be constant", pos)
            if not math.isfinite(folded):
                raise ExprSyntaxError("exponent of '^' is not finite", pos)
            return Binary("^", base, Number(folded))
        return base

    def atom(self) -> Expr:
        kind, value, pos = self.advance()
        if kind == "num":
            return Number(float(value))
        if kind == "ident":
            if value == "w":
                return Var()
            if value == "pi":
                return Number(math.pi)
            if value in FUNCTIONS:
                self.expect_op("(")
                inner = self.expr()
                self.expect_op(")")
                return Unary(value, inner)
            raise UnknownIdentifier(f"unknown identifier {value!r}", pos)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ExprSyntaxError(
            f"expected a number, 'w', 'pi', a function call or '(', found {value or 'end of input'!r}",
            pos,
        )


def parse_expr(text: str) -> Expr:
    """Parse expression text into a tree. Raises ExprSyntaxError with the
    byte offset of the failure; UnknownIdentifier for unrecognized names."""
    if not text or text.isspace():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(text).parse()


def _fold_const(e: Expr):
    """Value of a variable-free subtree, or None if it contains `w`."""
    if isinstance(e, Number):
        return e.value
    if isinstance(e, Var):
        return None
    if isinstance(e, Unary):
        v = _fold_const(e.arg)
        if v is None:
            return None
        try:
            if e.op == "neg":
                return -v
            if e.op == "sqrt":
                return math.sqrt(v)
            if e.op == "ln":
                return math.log(v)
            return getattr(math, e.op)(v)
        except (ValueError, OverflowError):
            return math.nan
    v1 = _fold_const(e.left)
    v2 = _fold_const(e.right)
    if v1 is None or v2 is None:
        return None
    try:
        if e.op == "+":
            return v1 + v2
        if e.op == "-":
            return v1 - v2
        if e.op == "*":
            return v1 * v2
        if e.op == "/":
            return v1 / v2
        return math.pow(v1, v2)
    except (ValueError, OverflowError, ZeroDivisionError):
        return math.nan


def to_string(e: Expr) -> str:
    """Canonical fully-parenthesized rendering; parse(to_string(e)) == e for
    every parser-produced tree."""
    if isinstance(e, Number):
        return repr(e.value)
    if isinstance(e, Var):
        return "w"
    if isinstance(e, Unary):
        if e.op == "neg":
            return f"(-{to_string(e.arg)})"
        return f"{e.op}({to_string(e.arg)})"
    return f"({to_string(e.left)} {e.op} {to_string(e.right)})"


def eval_jet(e: Expr | str, omega: float) -> Jet3:
    """Value and first three w-derivatives of the expression at omega."""
    if isinstance(e, str):
        e = parse_expr(e)
    return _eval(e, jet_var(omega))


def _eval(e: Expr, w: Jet3) -> Jet3:
    if isinstance(e, Number):
        return jet_const(e.value)
    if isinstance(e, Var):
        return w
    if isinstance(e, Unary):
        return jet_elem(e.op, _eval(e.arg, w))
    if e.op == "+":
        return jet_add(_eval(e.left, w), _eval(e.right, w))
    if e.op == "-":
        return jet_sub(_eval(e.left, w), _eval(e.right, w))
    if e.op == "*":
        return jet_mul(_eval(e.left, w), _eval(e.right, w))
    if e.op == "/":
        return jet_div(_eval(e.left, w), _eval(e.right, w))
    if e.op == "^":
        p = _fold_const(e.right)
        if p is None or not math.isfinite(p):
            raise DomainError("power exponent must fold to a finite constant")
        return jet_elem("pow", _eval(e.left, w), exponent=p)
    raise ValueError(f"unknown operator {e.op!r}")


@dataclass(frozen=True)
class ParamCurve:
    """A space curve w -> R^3 with exact derivatives to order three."""

    x: Expr
    y: Expr
    z: Expr
    domain: tuple[float, float] = (0.0, 2.0 * math.pi)


def helix(a: float, b: float, domain: tuple[float, float] = (0.0, 2.0 * math.pi)) -> ParamCurve:
    """(a sin w, a cos w, b w)."""
    return ParamCurve(
        Binary("*", Number(float(a)), Unary("sin", Var())),
        Binary("*", Number(float(a)), Unary("cos", Var())),
        Binary("*", Number(float(b)), Var()),
        domain,
    )


def circle(r: float, domain: tuple[float, float] = (0.0, 2.0 * math.pi)) -> ParamCurve:
    """(r cos w, r sin w, 0)."""
    return ParamCurve(
        Binary("*", Number(float(r)), Unary("cos", Var())),
        Binary("*", Number(float(r)), Unary("sin", Var())),
        Number(0.0),
        domain,
    )


def curve_from_exprs(x: str, y: str, z: str, domain: tuple[float, float] = (0.0, 2.0 * math.pi)) -> ParamCurve:
    return ParamCurve(parse_expr(x), parse_expr(y), parse_expr(z), domain)


def curve_point(c: ParamCurve, omega: float) -> np.ndarray:
    return np.array([_eval(e, jet_var(omega)).v0 for e in (c.x, c.y, c.z)])


def curve_derivatives(c: ParamCurve, omega: float):
    """gamma, gamma', gamma'', gamma''' at omega, each a length-3 array."""
    jets = [_eval(e, jet_var(omega)) for e in (c.x, c.y, c.z)]
    gamma = np.array([j.v0 for j in jets])
    d1 = np.array([j.v1 for j in jets])
    d2 = np.array([j.v2 for j in jets])
    d3 = np.array([j.v3 for j in jets])
    return gamma, d1, d2, d3


def check_regularity(c: ParamCurve, samples: int = 256, eps_reg: float = EPS_REG) -> float:
    """Sample ||gamma'|| uniformly over the domain; raise DegenerateCurve on a
    violation. Returns the minimum sampled speed."""
    lo, hi = c.domain
    min_speed = math.inf
    for omega in np.linspace(lo, hi, samples):
        _, d1, _, _ = curve_derivatives(c, float(omega))
        speed = float(np.linalg.norm(d1))
        if speed <= eps_reg:
            raise DegenerateCurve(
                f"curve velocity {speed:.3e} at omega={float(omega)!r} is below {eps_reg}"
            )
        min_speed = min(min_speed, speed)
    return min_speed
