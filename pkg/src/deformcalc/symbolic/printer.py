"""Minimal-parenthesis rendering that the parser reads back unchanged."""

from __future__ import annotations

import math

from .expr import Add, Apply, Const, Div, Expr, Mul, Neg, Number, Pow, Sub, Variable

__all__ = ["format_number", "to_text"]

_SUM, _PRODUCT, _UNARY, _POWER, _ATOM = 1, 2, 3, 4, 5


def format_number(v: float) -> str:
    if math.isfinite(v) and v.is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def _prec(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _SUM
    if isinstance(e, (Mul, Div)):
        return _PRODUCT
    if isinstance(e, Neg):
        return _UNARY
    if isinstance(e, Number) and e.value < 0:
        return _UNARY
    if isinstance(e, Pow):
        return _POWER
    return _ATOM


def _wrap(e: Expr, need: bool) -> str:
    s = to_text(e)
    return f"({s})" if need else s


def to_text(e: Expr) -> str:
    if isinstance(e, Number):
        return format_number(e.value)
    if isinstance(e, (Variable, Const)):
        return e.name
    if isinstance(e, Apply):
        return f"{e.fn}({', '.join(to_text(a) for a in e.args)})"
    if isinstance(e, Neg):
        # "-(2)" keeps Neg(Number) distinct from a negative literal
        need = _prec(e.arg) < _UNARY or isinstance(e.arg, Number) and e.arg.value >= 0
        return "-" + _wrap(e.arg, need)
    if isinstance(e, Pow):
        base = _wrap(e.base, _prec(e.base) <= _POWER)
        exp = _wrap(e.exp, _prec(e.exp) < _UNARY)
        return f"{base}^{exp}"
    op, level = {Add: ("+", _SUM), Sub: ("-", _SUM), Mul: ("*", _PRODUCT), Div: ("/", _PRODUCT)}[
        type(e)
    ]
    left = _wrap(e.left, _prec(e.left) < level)
    right = _wrap(e.right, _prec(e.right) <= level)
    if level == _SUM:
        return f"{left} {op} {right}"
    return f"{left}{op}{right}"
