r"""Numeric deformed derivatives and integrals.

Closed forms, for differentiable ``f``:

======================  ==============================================
conformable (``cd``)    :math:`x^{1-\alpha} f'(x)`
dual (``dcd``)          :math:`f(x)^{\alpha-1} f'(x)`
fractal (``chen``)      :math:`x^{1-\alpha} f'(x) / \alpha`
======================  ==============================================

The ``*_limit`` variants evaluate the defining difference quotients along a
shrinking step sequence and Richardson-extrapolate.

Functions may be plain callables, :class:`RealFunction` (optionally carrying
an analytic derivative), parsed :class:`~deformcalc.symbolic.Expr` trees or
expression strings. Expressions are differentiated symbolically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .algebra import DeformParam, ParamLike, as_param
from .errors import ConvergenceError, DomainError, NumericsError
from .quadrature import adaptive_simpson

__all__ = [
    "LimitSchedule",
    "RealFunction",
    "as_function",
    "cd",
    "cd_integral",
    "cd_limit",
    "chen",
    "chen_limit",
    "dcd",
    "dcd_antiderivative_strict",
    "dcd_integral_paper",
    "dcd_limit",
    "numeric_derivative",
]

_EPS = float(np.finfo(float).eps)
_CBRT_EPS = _EPS ** (1.0 / 3.0)


@dataclass(frozen=True)
class RealFunction:
    """Real function handle with an optional analytic derivative."""

    f: Callable[[float], float]
    df: Optional[Callable[[float], float]] = None

    def __call__(self, x: float) -> float:
        return self.f(x)


FunctionLike = Union[RealFunction, Callable[[float], float], str, "Expr"]  # noqa: F821


def as_function(f: FunctionLike, var: str = "x") -> RealFunction:
    if isinstance(f, RealFunction):
        return f
    from .symbolic import Expr, derivative, lambdify, parse

    if isinstance(f, str):
        f = parse(f)
    if isinstance(f, Expr):
        return RealFunction(lambdify(f, var), lambdify(derivative(f, var), var))
    if callable(f):
        return RealFunction(f)
    raise TypeError(f"cannot use {type(f).__name__} as a real function")


@dataclass(frozen=True)
class LimitSchedule:
    """Step sequence ``eps0 * shrink**k``, ``k < levels``, for the limit evaluators."""

    eps0: float = 1e-2
    levels: int = 4
    shrink: float = 0.5

    def __post_init__(self):
        if not self.eps0 > 0:
            raise ValueError("eps0 must be > 0")
        if int(self.levels) != self.levels or self.levels < 2:
            raise ValueError("levels must be an integer >= 2")
        if not 0 < self.shrink < 1:
            raise ValueError("shrink must lie in (0, 1)")

    def steps(self) -> np.ndarray:
        return self.eps0 * self.shrink ** np.arange(self.levels)


def _value(f: Callable[[float], float], x: float) -> float:
    v = float(f(x))
    if not math.isfinite(v):
        raise NumericsError(f"function is not finite at x={x!r}")
    return v


def numeric_derivative(f: FunctionLike, x: float) -> float:
    """``f'(x)``: analytic if available, else a central difference.

    The step is ``cbrt(eps) * max(|x|, 1)``, rounded so that ``x + h`` is exact.
    """
    rf = as_function(f)
    if rf.df is not None:
        return _value(rf.df, x)
    h = _CBRT_EPS * max(abs(x), 1.0)
    h = (x + h) - x
    return (_value(rf.f, x + h) - _value(rf.f, x - h)) / (2.0 * h)


def _positive_x(x: float, what: str):
    if not x > 0:
        raise DomainError(f"{what} needs x > 0, got {x!r}")


def _real_power(base: float, k: float, what: str) -> float:
    if base < 0 and not float(k).is_integer():
        raise DomainError(f"{what}: f(x) = {base!r} < 0 with non-integer exponent {k!r}")
    if base == 0 and k < 0:
        raise DomainError(f"{what}: f(x) = 0 with negative exponent {k!r}")
    return math.pow(base, k)


def cd(f: FunctionLike, p: ParamLike, x: float) -> float:
    """Conformable derivative ``x^(1-alpha) f'(x)``; ``x > 0``."""
    p = as_param(p)
    x = float(x)
    _positive_x(x, "conformable derivative")
    return x ** (1.0 - p.alpha) * numeric_derivative(f, x)


def dcd(f: FunctionLike, p: ParamLike, x: float) -> float:
    """Dual conformable derivative ``f(x)^(alpha-1) f'(x)``."""
    p = as_param(p)
    rf = as_function(f)
    x = float(x)
    fx = _value(rf.f, x)
    w = _real_power(fx, p.alpha - 1.0, "dual conformable derivative")
    return w * numeric_derivative(rf, x)


def chen(f: FunctionLike, p: ParamLike, x: float) -> float:
    """Fractal derivative ``df/d(x^alpha) = x^(1-alpha) f'(x) / alpha``; ``x > 0``."""
    p = as_param(p)
    x = float(x)
    _positive_x(x, "fractal derivative")
    return x ** (1.0 - p.alpha) * numeric_derivative(f, x) / p.alpha


def _richardson(values: np.ndarray, shrink: float, scale: float) -> float:
    """Extrapolate ``values[k] ~ L + c1 h_k + c2 h_k^2 + ...`` with ``h_k ∝ shrink**k``."""
    table = [list(values)]
    for j in range(1, len(values)):
        prev = table[-1]
        factor = shrink ** (-j)
        table.append([prev[i + 1] + (prev[i + 1] - prev[i]) / (factor - 1.0) for i in range(len(prev) - 1)])
    best = table[-1][0]
    second = table[-2][-1]
    if not (math.isfinite(best) and math.isfinite(second)):
        raise ConvergenceError("non-finite extrapolant")
    if abs(best - second) > 1e-3 * max(abs(best), abs(second)) + 1e-8 * scale:
        raise ConvergenceError(f"extrapolants disagree: {second!r} vs {best!r}")
    return float(best)


def cd_limit(f: FunctionLike, p: ParamLike, x: float, s: LimitSchedule = LimitSchedule()) -> float:
    """Conformable derivative from ``[f(x + eps x^(1-alpha)) - f(x)] / eps``."""
    p = as_param(p)
    _positive_x(x, "conformable derivative")
    rf = as_function(f)
    fx = _value(rf.f, x)
    w = x ** (1.0 - p.alpha)
    eps = s.steps()
    q = np.array([(_value(rf.f, x + e * w) - fx) / e for e in eps])
    return _richardson(q, s.shrink, max(abs(fx), 1.0))


def dcd_limit(f: FunctionLike, p: ParamLike, x: float, s: LimitSchedule = LimitSchedule()) -> float:
    """Dual conformable derivative from ``(f(y) ⊖ f(x)) / (y - x)`` as ``y -> x``."""
    p = as_param(p)
    rf = as_function(f)
    fx = _value(rf.f, x)
    if not fx > 0:
        raise DomainError(f"dual conformable limit needs f(x) > 0, got {fx!r}")
    w = fx ** (p.alpha - 1.0)
    dx = s.steps() * max(abs(x), 1.0)
    q = np.array([(_value(rf.f, x + d) - fx) * w / d for d in dx])
    return _richardson(q, s.shrink, max(abs(fx), 1.0))


def chen_limit(f: FunctionLike, p: ParamLike, x: float, s: LimitSchedule = LimitSchedule()) -> float:
    """Fractal derivative from ``[f(x') - f(x)] / (x'^alpha - x^alpha)`` as ``x' -> x``.

    Uses ``x' = x + eps x^(1-alpha)``, the same increment as :func:`cd_limit`.
    """
    p = as_param(p)
    _positive_x(x, "fractal derivative")
    rf = as_function(f)
    fx = _value(rf.f, x)
    w = x ** (1.0 - p.alpha)
    xa = x**p.alpha
    q = []
    for e in s.steps():
        xp = x + e * w
        q.append((_value(rf.f, xp) - fx) / (xp**p.alpha - xa))
    return _richardson(np.array(q), s.shrink, max(abs(fx), 1.0))


def cd_integral(
    f: FunctionLike,
    p: ParamLike,
    a: float,
    b: float,
    abs_tol: float = 1e-10,
    rel_tol: float = 1e-8,
    max_intervals: int = 2**20,
) -> float:
    r"""Conformable integral :math:`\int_a^b f(x)\, x^{\alpha-1}\, dx`.

    For ``a = 0`` and ``alpha < 1`` the weight is singular; the integral is then
    taken in ``t = x^alpha / alpha`` (``dt = x^(alpha-1) dx``), so the weight
    is never evaluated at the origin.
    """
    p = as_param(p)
    if a < 0 or b < 0:
        raise DomainError("conformable integral needs 0 <= a, b")
    rf = as_function(f)
    al = p.alpha
    if p.is_classical():
        return adaptive_simpson(rf.f, a, b, abs_tol, rel_tol, max_intervals)
    if min(a, b) == 0 and al < 1:
        inv = 1.0 / al

        def g(t):
            return rf.f((al * t) ** inv)

        return adaptive_simpson(g, a**al / al, b**al / al, abs_tol, rel_tol, max_intervals)

    def h(x):
        return rf.f(x) * x ** (al - 1.0)

    return adaptive_simpson(h, a, b, abs_tol, rel_tol, max_intervals)


def dcd_integral_paper(
    f: FunctionLike,
    p: ParamLike,
    a: float,
    b: float,
    abs_tol: float = 1e-10,
    rel_tol: float = 1e-8,
    max_intervals: int = 2**20,
) -> float:
    r"""Dual conformable integral in its literal form :math:`\int_a^b f^{1-\alpha} f\, dx`.

    This is *not* a right inverse of :func:`dcd` for ``alpha != 1``; see
    :func:`dcd_antiderivative_strict` for one that is. The integrand is
    meaningful for any real order, so a plain float ``p`` is not restricted
    to ``alpha > 0`` here.
    """
    alpha = p.alpha if isinstance(p, DeformParam) else float(p)
    if not math.isfinite(alpha):
        raise DomainError(f"order must be finite, got {p!r}")
    rf = as_function(f)
    k = 2.0 - alpha

    def g(x):
        return _real_power(_value(rf.f, x), k, "dual conformable integral")

    return adaptive_simpson(g, a, b, abs_tol, rel_tol, max_intervals)


def dcd_antiderivative_strict(
    f: FunctionLike,
    p: ParamLike,
    x0: float,
    H0: float,
    x: float,
    abs_tol: float = 1e-10,
    rel_tol: float = 1e-8,
    max_intervals: int = 2**20,
) -> float:
    r"""Right inverse of :func:`dcd`: the ``H`` with ``H^(alpha-1) H' = f`` and ``H(x0) = H0``.

    Solving the separable equation gives

    .. math::

        H(x) = \Big(\alpha \int_{x_0}^x f(s)\, ds + H_0^\alpha\Big)^{1/\alpha}.

    ``H0 = 0`` is accepted as the limit of the positive branch. A
    :class:`DomainError` is raised when the bracket is not positive at ``x``.
    """
    p = as_param(p)
    if H0 < 0:
        raise DomainError("strict dual antiderivative needs H0 >= 0")
    rf = as_function(f)
    integral = adaptive_simpson(rf.f, x0, x, abs_tol, rel_tol, max_intervals)
    if p.is_classical():
        return H0 + integral
    bracket = p.alpha * integral + H0**p.alpha
    if bracket == 0 and x == x0:
        return 0.0
    if not bracket > 0:
        raise DomainError(f"strict dual antiderivative leaves the positive branch at x={x!r}")
    return bracket ** (1.0 / p.alpha)
