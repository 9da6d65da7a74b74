"""Shared generators for expression-tree tests."""

from __future__ import annotations

import math

import numpy as np
import pytest

from deformcalc.symbolic import Add, Apply, Const, Div, Mul, Neg, Number, Pow, Sub, Variable

VARIABLES = ("x", "y", "z", "t", "u1")
BINARY = (Add, Sub, Mul, Div, Pow)
UNARY_FUNCTIONS = ("exp", "ln", "sin", "cos", "sqrt")


def _number(rng: np.random.Generator) -> Number:
    kind = rng.integers(4)
    if kind == 0:
        v = float(rng.integers(0, 10))
    elif kind == 1:
        v = float(np.round(rng.uniform(0, 10), int(rng.integers(1, 4))))
    elif kind == 2:
        v = float(rng.uniform(0, 1e3)) * 10.0 ** float(rng.integers(-8, 8))
    else:
        v = float(rng.standard_normal())
    if rng.random() < 0.3:
        v = -v
    return Number(v)


def random_tree(rng: np.random.Generator, depth: int):
    """Arbitrary syntax tree: every node type, any nesting, negative literals."""
    if depth <= 0 or rng.random() < 0.2:
        r = rng.integers(3)
        if r == 0:
            return _number(rng)
        if r == 1:
            return Variable(str(rng.choice(VARIABLES)))
        return Const(str(rng.choice(["pi", "e", "alpha"])))
    r = rng.integers(8)
    if r < 5:
        return BINARY[r](random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if r == 5:
        return Neg(random_tree(rng, depth - 1))
    if r == 6:
        return Apply(str(rng.choice(UNARY_FUNCTIONS)), (random_tree(rng, depth - 1),))
    return Apply("qexp", (random_tree(rng, depth - 1), random_tree(rng, depth - 1)))


def smooth_tree(rng: np.random.Generator, depth: int):
    """Tree in the single variable x built to be differentiable on x > 0 most of the time."""
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.6:
            return Variable("x")
        return Number(float(np.round(rng.uniform(0.5, 2.0), 2)))
    r = rng.integers(9)
    a = smooth_tree(rng, depth - 1)
    if r == 0:
        return Add(a, smooth_tree(rng, depth - 1))
    if r == 1:
        return Sub(a, smooth_tree(rng, depth - 1))
    if r == 2:
        return Mul(a, smooth_tree(rng, depth - 1))
    if r == 3:
        return Div(a, Add(Number(1.0), Mul(smooth_tree(rng, depth - 1), smooth_tree(rng, depth - 1))))
    if r == 4:
        return Pow(a, Number(float(rng.choice([2.0, 3.0, 0.5, -1.0, 1.5]))))
    if r == 5:
        return Apply("exp", (Mul(Number(0.5), Apply("sin", (a,))),))
    if r == 6:
        return Apply(str(rng.choice(["sin", "cos"])), (a,))
    if r == 7:
        return Apply("ln", (Add(Number(1.0), Mul(a, a)),))
    return Apply("sqrt", (Add(Number(1.0), Mul(a, a)),))


def depth(e) -> int:
    from deformcalc.symbolic.expr import children

    kids = children(e)
    return 1 + max((depth(k) for k in kids), default=0)


def richardson_fd(f, x: float, h: float = 1e-2, levels: int = 5) -> float:
    """Central differences extrapolated in h^2 (Neville table)."""
    table = []
    for i in range(levels):
        hi = h / 2**i
        row = [(f(x + hi) - f(x - hi)) / (2 * hi)]
        for j in range(1, i + 1):
            prev = table[i - 1][j - 1]
            row.append(row[j - 1] + (row[j - 1] - prev) / (4**j - 1))
        table.append(row)
    return table[-1][-1]


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


def finite(v) -> bool:
    return isinstance(v, float) and math.isfinite(v)
