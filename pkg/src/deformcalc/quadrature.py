"""Adaptive Simpson quadrature with a global interval budget."""

from __future__ import annotations

import math
from typing import Callable

from .errors import NumericsError, QuadratureError

__all__ = ["adaptive_simpson"]

_INITIAL_PANELS = 16


def _eval(f: Callable[[float], float], x: float) -> float:
    v = float(f(x))
    if not math.isfinite(v):
        raise NumericsError(f"integrand is not finite at x={x!r}")
    return v


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    abs_tol: float = 1e-10,
    rel_tol: float = 1e-8,
    max_intervals: int = 2**20,
) -> float:
    """Integrate ``f`` over ``[a, b]`` by adaptive Simpson with Richardson correction.

    A coarse uniform pass fixes the target ``max(abs_tol, rel_tol * |I|)``,
    which is then distributed over panels in proportion to their width.
    Raises :class:`QuadratureError` when more than ``max_intervals`` leaf
    intervals would be needed.
    """
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(f, b, a, abs_tol, rel_tol, max_intervals)

    n = _INITIAL_PANELS
    xs = [a + (b - a) * k / (2 * n) for k in range(2 * n + 1)]
    xs[-1] = b
    ys = [_eval(f, x) for x in xs]
    coarse = 0.0
    panels = []
    for k in range(n):
        x0, xm, x1 = xs[2 * k], xs[2 * k + 1], xs[2 * k + 2]
        f0, fm, f1 = ys[2 * k], ys[2 * k + 1], ys[2 * k + 2]
        s = (x1 - x0) * (f0 + 4.0 * fm + f1) / 6.0
        coarse += s
        panels.append((x0, x1, f0, fm, f1, s))

    target = max(abs_tol, rel_tol * abs(coarse))
    width = b - a
    total = 0.0
    leaves = 0
    stack = [(p, target * (p[1] - p[0]) / width) for p in reversed(panels)]
    while stack:
        (x0, x1, f0, fm, f1, whole), tol = stack.pop()
        xm = 0.5 * (x0 + x1)
        xl, xr = 0.5 * (x0 + xm), 0.5 * (xm + x1)
        fl, fr = _eval(f, xl), _eval(f, xr)
        left = (xm - x0) * (f0 + 4.0 * fl + fm) / 6.0
        right = (x1 - xm) * (fm + 4.0 * fr + f1) / 6.0
        delta = left + right - whole
        if abs(delta) <= 15.0 * tol:
            total += left + right + delta / 15.0
            leaves += 1
            continue
        if not (x0 < xl < xm < xr < x1):
            raise QuadratureError(f"interval [{x0!r}, {x1!r}] cannot be split further")
        if leaves + len(stack) + 2 > max_intervals:
            raise QuadratureError(f"tolerance {target:g} not met within {max_intervals} intervals")
        stack.append(((xm, x1, fm, fr, f1, right), 0.5 * tol))
        stack.append(((x0, xm, f0, fl, fm, left), 0.5 * tol))
    return total
