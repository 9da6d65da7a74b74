"""Evaluation, differentiation and a small terminating simplifier.

The simplifier is deliberately modest: it folds constants, drops 0/1
identities, collects like terms and merges powers of a common base. It is
not a canonical form; identities are established by numeric sampling
(:func:`check_identity`), not by comparing normal forms.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .. import algebra
from ..errors import DomainError, InsufficientSamples, UnboundVariable, UnsupportedNode
from ..report import PropertyEntry
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

__all__ = [
    "cd_symbolic",
    "chen_symbolic",
    "check_identity",
    "derivative",
    "dcd_symbolic",
    "evaluate",
    "lambdify",
    "simplify",
]

ZERO, ONE = Number(0.0), Number(1.0)

# --------------------------------------------------------------------------
# evaluation


def _pow(b: float, k: float) -> float:
    if b < 0 and not float(k).is_integer():
        raise DomainError(f"non-integer power {k!r} of negative base {b!r}")
    if b == 0 and k < 0:
        raise DomainError("zero raised to a negative power")
    return math.pow(b, k)


def _apply(fn: str, args: List[float]) -> float:
    if fn == "exp":
        return math.exp(args[0])
    if fn == "ln":
        if args[0] <= 0:
            raise DomainError(f"ln of non-positive value {args[0]!r}")
        return math.log(args[0])
    if fn == "sqrt":
        if args[0] < 0:
            raise DomainError(f"sqrt of negative value {args[0]!r}")
        return math.sqrt(args[0])
    if fn == "sin":
        return math.sin(args[0])
    if fn == "cos":
        return math.cos(args[0])
    if fn == "qexp":
        return algebra.qexp(args[0], args[1])
    raise UnsupportedNode(fn)


def evaluate(e: Expr, bindings: Optional[Dict[str, float]] = None) -> float:
    """Evaluate ``e``; ``alpha`` is looked up in ``bindings`` like a variable."""
    bindings = bindings or {}
    if isinstance(e, Number):
        return e.value
    if isinstance(e, Variable):
        try:
            return float(bindings[e.name])
        except KeyError:
            raise UnboundVariable(f"variable {e.name!r} is not bound") from None
    if isinstance(e, Const):
        if e.name == "pi":
            return math.pi
        if e.name == "e":
            return math.e
        try:
            return float(bindings[e.name])
        except KeyError:
            raise UnboundVariable("constant 'alpha' needs a numeric binding") from None
    if isinstance(e, Neg):
        return -evaluate(e.arg, bindings)
    if isinstance(e, Add):
        return evaluate(e.left, bindings) + evaluate(e.right, bindings)
    if isinstance(e, Sub):
        return evaluate(e.left, bindings) - evaluate(e.right, bindings)
    if isinstance(e, Mul):
        return evaluate(e.left, bindings) * evaluate(e.right, bindings)
    if isinstance(e, Div):
        d = evaluate(e.right, bindings)
        if d == 0:
            raise DomainError("division by zero")
        return evaluate(e.left, bindings) / d
    if isinstance(e, Pow):
        return _pow(evaluate(e.base, bindings), evaluate(e.exp, bindings))
    if isinstance(e, Apply):
        return _apply(e.fn, [evaluate(a, bindings) for a in e.args])
    raise UnsupportedNode(f"cannot evaluate {e!r}")


def lambdify(e: Expr, var: str = "x", **fixed: float):
    """Return ``t -> evaluate(e, {var: t, **fixed})``."""

    def f(t):
        return evaluate(e, {**fixed, var: float(t)})

    return f


# --------------------------------------------------------------------------
# differentiation


def _d(e: Expr, var: str) -> Expr:
    if isinstance(e, (Number, Const)):
        return ZERO
    if isinstance(e, Variable):
        return ONE if e.name == var else ZERO
    if isinstance(e, Neg):
        return Neg(_d(e.arg, var))
    if isinstance(e, Add):
        return Add(_d(e.left, var), _d(e.right, var))
    if isinstance(e, Sub):
        return Sub(_d(e.left, var), _d(e.right, var))
    if isinstance(e, Mul):
        return Add(Mul(_d(e.left, var), e.right), Mul(e.left, _d(e.right, var)))
    if isinstance(e, Div):
        num = Sub(Mul(_d(e.left, var), e.right), Mul(e.left, _d(e.right, var)))
        return Div(num, Pow(e.right, Number(2)))
    if isinstance(e, Pow):
        b, k = e.base, e.exp
        if var not in free_variables(k):
            lower = Number(k.value - 1) if isinstance(k, Number) else Sub(k, ONE)
            return Mul(Mul(k, Pow(b, lower)), _d(b, var))
        if var not in free_variables(b):
            return Mul(Mul(e, Apply("ln", (b,))), _d(k, var))
        inner = Add(Mul(_d(k, var), Apply("ln", (b,))), Div(Mul(k, _d(b, var)), b))
        return Mul(e, inner)
    if isinstance(e, Apply):
        if e.fn == "qexp":
            q, u = e.args
            if var in free_variables(q):
                raise UnsupportedNode("qexp index depending on the differentiation variable")
            # d e_q(u) / du = e_q(u)^q
            return Mul(Pow(e, q), _d(u, var))
        (u,) = e.args
        du = _d(u, var)
        if e.fn == "exp":
            return Mul(e, du)
        if e.fn == "ln":
            return Div(du, u)
        if e.fn == "sin":
            return Mul(Apply("cos", (u,)), du)
        if e.fn == "cos":
            return Neg(Mul(Apply("sin", (u,)), du))
        if e.fn == "sqrt":
            return Div(du, Mul(Number(2), e))
    raise UnsupportedNode(f"no derivative rule for {e!r}")


def derivative(e: Expr, var: str = "x") -> Expr:
    """Classical symbolic derivative of ``e`` with respect to ``var``, simplified."""
    return simplify(_d(e, var))


# --------------------------------------------------------------------------
# simplification

Factors = List[Tuple[Expr, Expr]]


def _is_num(e: Expr, v: Optional[float] = None) -> bool:
    return isinstance(e, Number) and (v is None or e.value == v)


def _fold_pow(b: float, k: float) -> Optional[float]:
    try:
        r = _pow(b, k)
    except (DomainError, OverflowError, ValueError):
        return None
    return r if math.isfinite(r) else None


class _Simplifier:
    def __init__(self, positive: Iterable[str]):
        self.positive = frozenset(positive)

    def __call__(self, e: Expr) -> Expr:
        if isinstance(e, (Number, Variable, Const)):
            return e
        if isinstance(e, (Add, Sub, Neg)):
            return self.sum(e)
        if isinstance(e, (Mul, Div)):
            return self.product(e)
        if isinstance(e, Pow):
            return self.power(self(e.base), self(e.exp))
        if isinstance(e, Apply):
            return self.apply(e.fn, tuple(self(a) for a in e.args))
        raise UnsupportedNode(repr(e))

    # -- functions
    def apply(self, fn: str, args: Tuple[Expr, ...]) -> Expr:
        a = args[-1]
        exact = {
            "exp": {0.0: 1.0},
            "ln": {1.0: 0.0},
            "sin": {0.0: 0.0},
            "cos": {0.0: 1.0},
            "sqrt": {0.0: 0.0, 1.0: 1.0},
            "qexp": {0.0: 1.0},
        }[fn]
        if isinstance(a, Number) and a.value in exact:
            return Number(exact[a.value])
        if fn == "ln" and isinstance(a, Apply) and a.fn == "exp":
            return a.args[0]
        return Apply(fn, args)

    # -- powers
    def power(self, b: Expr, k: Expr) -> Expr:
        if _is_num(k, 0.0):
            return ONE
        if _is_num(k, 1.0):
            return b
        if _is_num(b, 1.0):
            return ONE
        if isinstance(b, Number) and isinstance(k, Number):
            r = _fold_pow(b.value, k.value)
            if r is not None:
                return Number(r)
        if isinstance(b, Pow):
            inner = b.base
            integral = isinstance(k, Number) and k.value.is_integer()
            if integral or (isinstance(inner, Variable) and inner.name in self.positive):
                return self.power(inner, self.product(Mul(b.exp, k)))
        return Pow(b, k)

    # -- products
    def _collect_product(self, e: Expr, sign: int, acc: Dict[Expr, List[Expr]], coef: List[float]):
        if isinstance(e, Number):
            if sign < 0 and e.value == 0:
                acc.setdefault(e, []).append(Number(-1))
            else:
                coef[0] *= e.value if sign > 0 else 1.0 / e.value
        elif isinstance(e, Neg):
            coef[0] = -coef[0]
            self._collect_product(e.arg, sign, acc, coef)
        elif isinstance(e, Mul):
            self._collect_product(e.left, sign, acc, coef)
            self._collect_product(e.right, sign, acc, coef)
        elif isinstance(e, Div):
            self._collect_product(e.left, sign, acc, coef)
            self._collect_product(e.right, -sign, acc, coef)
        elif isinstance(e, Pow):
            k = e.exp
            if sign < 0:
                k = Number(-k.value) if isinstance(k, Number) else Neg(k)
            acc.setdefault(e.base, []).append(k)
        else:
            acc.setdefault(e, []).append(Number(sign))

    def factors(self, e: Expr) -> Tuple[float, Factors]:
        """Split an already simplified product into ``coef * prod(base**exp)``."""
        acc: Dict[Expr, List[Expr]] = {}
        coef = [1.0]
        self._collect_product(e, 1, acc, coef)
        out: Factors = []
        for base, exps in acc.items():
            k = exps[0]
            for extra in exps[1:]:
                k = Add(k, extra)
            k = self(k) if len(exps) > 1 else k
            if _is_num(k, 0.0):
                continue
            if isinstance(base, Number) and isinstance(k, Number):
                r = _fold_pow(base.value, k.value)
                if r is not None:
                    coef[0] *= r
                    continue
            out.append((base, k))
        return coef[0], out

    def build_product(self, coef: float, factors: Factors) -> Expr:
        if coef == 0:
            return ZERO
        num: List[Expr] = []
        den: List[Expr] = []
        for base, k in factors:
            if isinstance(k, Number) and k.value < 0:
                den.append(self.power(base, Number(-k.value)))
            else:
                num.append(self.power(base, k))
        if not num:
            top: Expr = Number(coef)
        else:
            top = num[0]
            for f in num[1:]:
                top = Mul(top, f)
            if coef == -1.0:
                top = Neg(top)
            elif coef != 1.0:
                top = _lead(Number(coef), num)
        if not den:
            return top
        bottom = den[0]
        for f in den[1:]:
            bottom = Mul(bottom, f)
        return Div(top, bottom)

    def product(self, e: Expr) -> Expr:
        e = type(e)(self(e.left), self(e.right))
        return self.build_product(*self.factors(e))

    # -- sums
    def _collect_sum(self, e: Expr, sign: float, terms: dict, order: list):
        if isinstance(e, Add):
            self._collect_sum(e.left, sign, terms, order)
            self._collect_sum(e.right, sign, terms, order)
        elif isinstance(e, Sub):
            self._collect_sum(e.left, sign, terms, order)
            self._collect_sum(e.right, -sign, terms, order)
        elif isinstance(e, Neg):
            self._collect_sum(e.arg, -sign, terms, order)
        elif isinstance(e, Number):
            self._add_term(None, (), sign * e.value, terms, order)
        else:
            coef, facs = self.factors(e)
            if not facs:
                self._add_term(None, (), sign * coef, terms, order)
            else:
                key = self.build_product(1.0, facs)
                self._add_term(key, facs, sign * coef, terms, order)

    @staticmethod
    def _add_term(key, facs, c, terms, order):
        if key not in terms:
            terms[key] = [0.0, facs]
            order.append(key)
        terms[key][0] += c

    def sum(self, e: Expr) -> Expr:
        if isinstance(e, Neg):
            e = Neg(self(e.arg))
        else:
            e = type(e)(self(e.left), self(e.right))
        terms: dict = {}
        order: list = []
        self._collect_sum(e, 1.0, terms, order)
        acc: Optional[Expr] = None
        for key in order:
            c, facs = terms[key]
            if c == 0:
                continue
            if acc is None:
                acc = Number(c) if key is None else self.build_product(c, facs)
            elif c < 0:
                acc = Sub(acc, Number(-c) if key is None else self.build_product(-c, facs))
            else:
                acc = Add(acc, Number(c) if key is None else self.build_product(c, facs))
        return ZERO if acc is None else acc


def _lead(c: Number, factors: List[Expr]) -> Expr:
    out: Expr = Mul(c, factors[0])
    for f in factors[1:]:
        out = Mul(out, f)
    return out


def _exp_powers(e: Expr, simp: _Simplifier) -> Expr:
    """Rewrite ``exp(u)^k`` as ``exp(k*u)`` everywhere."""
    if isinstance(e, Pow):
        b, k = _exp_powers(e.base, simp), _exp_powers(e.exp, simp)
        if isinstance(b, Apply) and b.fn == "exp":
            return Apply("exp", (simp(Mul(k, b.args[0])),))
        return Pow(b, k)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return type(e)(_exp_powers(e.left, simp), _exp_powers(e.right, simp))
    if isinstance(e, Neg):
        return Neg(_exp_powers(e.arg, simp))
    if isinstance(e, Apply):
        return Apply(e.fn, tuple(_exp_powers(a, simp) for a in e.args))
    return e


def simplify(e: Expr, positive: Iterable[str] = (), max_passes: int = 8) -> Expr:
    """Apply the fixed rule set until nothing changes (at most ``max_passes``).

    ``(x^a)^b -> x^(a*b)`` is used for non-integer ``b`` only when ``x`` is a
    variable listed in ``positive``.
    """
    simp = _Simplifier(positive)
    for _ in range(max_passes):
        new = simp(e)
        if new == e:
            break
        e = new
    out = simp(_exp_powers(e, simp))
    return out


# --------------------------------------------------------------------------
# deformed derivatives


def _alpha_expr(alpha) -> Expr:
    if alpha is None:
        return Const("alpha")
    return Number(algebra.as_param(alpha).alpha)


def _prepare(e: Expr, alpha) -> Expr:
    if alpha is None:
        return e
    return substitute(e, {"alpha": _alpha_expr(alpha)})


def cd_symbolic(e: Expr, var: str = "x", alpha=None) -> Expr:
    """Conformable derivative ``var^(1-alpha) * de/dvar``.

    With ``alpha=None`` the order stays the symbolic constant ``alpha``;
    otherwise it is substituted numerically, inside ``e`` as well.
    """
    e = simplify(_prepare(e, alpha))
    a = _alpha_expr(alpha)
    weight = Pow(Variable(var), Sub(ONE, a))
    return simplify(Mul(weight, derivative(e, var)), positive=(var,))


def dcd_symbolic(e: Expr, var: str = "x", alpha=None) -> Expr:
    """Dual conformable derivative ``e^(alpha-1) * de/dvar``."""
    e = simplify(_prepare(e, alpha))
    a = _alpha_expr(alpha)
    return simplify(Mul(Pow(e, Sub(a, ONE)), derivative(e, var)))


def chen_symbolic(e: Expr, var: str = "x", alpha=None) -> Expr:
    """Fractal (Hausdorff) derivative ``var^(1-alpha)/alpha * de/dvar``."""
    a = _alpha_expr(alpha)
    return simplify(Div(cd_symbolic(e, var, alpha), a), positive=(var,))


# --------------------------------------------------------------------------
# numeric identity oracle

_SKIP = (DomainError, ArithmeticError, ValueError)


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def check_identity(
    lhs: Expr,
    rhs: Expr,
    domain: Dict[str, Tuple[float, float]],
    n: int = 128,
    tol: float = 1e-8,
    seed=0,
    name: str = "identity",
    anchor: str = "",
    fixed: Optional[Dict[str, float]] = None,
) -> PropertyEntry:
    """Compare ``lhs`` and ``rhs`` at ``n`` uniform samples of the box ``domain``.

    Samples where either side raises a domain or arithmetic error are
    skipped; fewer than ``n/2`` valid samples raises
    :class:`InsufficientSamples`. The residual is
    ``|lhs - rhs| / max(|lhs|, |rhs|)``. ``seed`` may be an int or a
    :class:`numpy.random.Generator`.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    names = sorted(domain)
    lo = np.array([domain[k][0] for k in names], dtype=float)
    hi = np.array([domain[k][1] for k in names], dtype=float)
    pts = rng.uniform(lo, hi, size=(n, len(names)))
    valid = 0
    worst = 0.0
    for row in pts:
        env = dict(fixed or {})
        env.update(zip(names, map(float, row)))
        try:
            a = evaluate(lhs, env)
            b = evaluate(rhs, env)
        except _SKIP:
            continue
        if not (math.isfinite(a) and math.isfinite(b)):
            continue
        valid += 1
        worst = max(worst, _rel(a, b))
    if 2 * valid < n:
        raise InsufficientSamples(f"{name}: only {valid} of {n} samples were valid")
    return PropertyEntry.judge(name, anchor, valid, worst, tol)
