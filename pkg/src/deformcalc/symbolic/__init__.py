"""Expression language with classical and deformed symbolic differentiation."""

from .calculus import (
    cd_symbolic,
    chen_symbolic,
    check_identity,
    dcd_symbolic,
    derivative,
    evaluate,
    lambdify,
    simplify,
)
from .expr import (
    Add,
    Apply,
    Const,
    Div,
    Expr,
    Mul,
    Neg,
    Number,
    Pow,
    Sub,
    Variable,
    as_expr,
    free_variables,
    substitute,
)
from .parser import parse
from .printer import to_text

__all__ = [
    "Add", "Apply", "Const", "Div", "Expr", "Mul", "Neg", "Number", "Pow", "Sub", "Variable",
    "as_expr", "cd_symbolic", "chen_symbolic", "check_identity", "dcd_symbolic", "derivative",
    "evaluate", "free_variables", "lambdify", "parse", "simplify", "substitute", "to_text",
]
