"""Immutable expression trees.

Nodes are frozen dataclasses, so ``==`` is structural equality and trees are
hashable. Python operators build trees, which keeps tests readable::

    >>> x = Variable("x")
    >>> x**2 + Apply("sin", (x,))
    Add(left=Pow(base=Variable(name='x'), exp=Number(value=2.0)), ...)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

__all__ = [
    "CONSTANTS",
    "FUNCTIONS",
    "Add",
    "Apply",
    "Const",
    "Div",
    "Expr",
    "Mul",
    "Neg",
    "Number",
    "Pow",
    "Sub",
    "Variable",
    "as_expr",
    "free_variables",
    "substitute",
]

#: function name -> arity
FUNCTIONS = {"exp": 1, "ln": 1, "sin": 1, "cos": 1, "sqrt": 1, "qexp": 2}
CONSTANTS = frozenset({"pi", "e", "alpha"})


class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Sub(self, as_expr(other))

    def __rsub__(self, other):
        return Sub(as_expr(other), self)

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __pow__(self, other):
        return Pow(self, as_expr(other))

    def __rpow__(self, other):
        return Pow(as_expr(other), self)

    def __neg__(self):
        return Neg(self)

    def __str__(self) -> str:
        from .printer import to_text

        return to_text(self)


@dataclass(frozen=True)
class Number(Expr):
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True)
class Variable(Expr):
    name: str


@dataclass(frozen=True)
class Const(Expr):
    """Named constant: ``pi``, ``e`` or the deformation order ``alpha``."""

    name: str

    def __post_init__(self):
        if self.name not in CONSTANTS:
            raise ValueError(f"unknown constant {self.name!r}")


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exp: Expr


@dataclass(frozen=True)
class Apply(Expr):
    """Function application; ``qexp`` takes ``(index, argument)``."""

    fn: str
    args: Tuple[Expr, ...]

    def __post_init__(self):
        args = tuple(self.args)
        if self.fn not in FUNCTIONS:
            raise ValueError(f"unknown function {self.fn!r}")
        if len(args) != FUNCTIONS[self.fn]:
            raise ValueError(f"{self.fn} takes {FUNCTIONS[self.fn]} argument(s), got {len(args)}")
        object.__setattr__(self, "args", args)


Binary = (Add, Sub, Mul, Div)
ExprLike = Union[Expr, float, int]


def as_expr(v: ExprLike) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, float)):
        return Number(v)
    raise TypeError(f"cannot convert {type(v).__name__} to Expr")


def children(e: Expr) -> Tuple[Expr, ...]:
    if isinstance(e, Binary):
        return (e.left, e.right)
    if isinstance(e, Pow):
        return (e.base, e.exp)
    if isinstance(e, Neg):
        return (e.arg,)
    if isinstance(e, Apply):
        return e.args
    return ()


def free_variables(e: Expr) -> frozenset:
    if isinstance(e, Variable):
        return frozenset({e.name})
    out = frozenset()
    for c in children(e):
        out |= free_variables(c)
    return out


def substitute(e: Expr, mapping: dict) -> Expr:
    """Replace variables and constants by name; ``mapping`` values are Expr-like."""
    if isinstance(e, (Variable, Const)):
        return as_expr(mapping[e.name]) if e.name in mapping else e
    if isinstance(e, Number):
        return e
    if isinstance(e, Binary):
        return type(e)(substitute(e.left, mapping), substitute(e.right, mapping))
    if isinstance(e, Pow):
        return Pow(substitute(e.base, mapping), substitute(e.exp, mapping))
    if isinstance(e, Neg):
        return Neg(substitute(e.arg, mapping))
    if isinstance(e, Apply):
        return Apply(e.fn, tuple(substitute(a, mapping) for a in e.args))
    raise TypeError(f"not an expression node: {e!r}")
