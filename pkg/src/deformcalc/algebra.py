r"""Deformed arithmetic and the special functions that solve the eigen problems.

The deformation order :math:`\alpha` enters through the conformable subtraction

.. math::

    y \ominus_\alpha x = \frac{y - x}{x^{1 - \alpha}},

and the eigenfunctions of the two deformed derivatives are the stretched
exponential :math:`\exp(x^\alpha / \alpha)` and the Tsallis q-exponential
:math:`e_q(x) = [1 + (1 - q) x]^{1 / (1 - q)}` with :math:`q = 2 - \alpha`.

Every function accepts scalars or array-likes; scalar input gives a ``float``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, SupportError

__all__ = [
    "CLASSICAL_TOL",
    "DeformParam",
    "as_param",
    "csub",
    "dcd_eigenfunction",
    "qexp",
    "qln",
    "stretched_exp",
]

#: ``|alpha - 1|`` (or ``|q - 1|``) below which the classical branch is used.
CLASSICAL_TOL = 1e-12

# below this |1 - q| the log1p/expm1 forms replace the direct power
_STABLE_BAND = 1e-2


@dataclass(frozen=True)
class DeformParam:
    """Deformation order ``alpha`` of the conformable calculus.

    Any finite ``alpha > 0`` is accepted. ``alpha`` in ``(0, 1]`` is the usual
    conformable convention; larger values show up through ``alpha = 2 - q``
    when the entropic index ``q`` is below one.
    """

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a) or a <= 0.0:
            raise DomainError(f"deformation order must be finite and > 0, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    def q(self) -> float:
        """Companion entropic index ``2 - alpha``."""
        return 2.0 - self.alpha

    def is_classical(self) -> bool:
        return abs(self.alpha - 1.0) <= CLASSICAL_TOL

    @classmethod
    def from_q(cls, q: float) -> "DeformParam":
        return cls(2.0 - q)


ParamLike = Union[DeformParam, float]


def as_param(p: ParamLike) -> DeformParam:
    return p if isinstance(p, DeformParam) else DeformParam(p)


def _out(arr: np.ndarray):
    return float(arr) if arr.ndim == 0 else arr


def csub(y, x, p: ParamLike):
    """Conformable subtraction ``(y - x) * x**(alpha - 1)``; requires ``x > 0``."""
    p = as_param(p)
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("conformable subtraction needs x > 0")
    if p.is_classical():
        return _out(y - x)
    with np.errstate(all="ignore"):
        r = (y - x) * x ** (p.alpha - 1.0)
    if not np.all(np.isfinite(r)):
        raise DomainError("conformable subtraction overflowed")
    return _out(r)


def qexp(q: float, x, cutoff: bool = False):
    """Tsallis q-exponential ``[1 + (1 - q) x]**(1 / (1 - q))``.

    Outside the support ``1 + (1 - q) x > 0`` a :class:`SupportError` is raised,
    unless ``cutoff`` is set, in which case those points evaluate to 0.
    """
    x = np.asarray(x, dtype=float)
    d = 1.0 - float(q)
    if abs(d) <= CLASSICAL_TOL:
        with np.errstate(over="raise"):
            try:
                return _out(np.exp(x))
            except FloatingPointError:
                raise OverflowError("q-exponential overflow") from None
    a = d * x
    inside = a > -1.0
    if not np.all(inside) and not cutoff:
        bad = x if x.ndim == 0 else x[~inside][0]
        raise SupportError(
            f"q-exponential with q={q:g} undefined at x={float(bad):g} (1 + (1-q)x <= 0)"
        )
    a = np.where(inside, a, 0.0)
    with np.errstate(over="raise"):
        try:
            if abs(d) < _STABLE_BAND:
                r = np.exp(np.log1p(a) / d)
            else:
                r = (1.0 + a) ** (1.0 / d)
        except FloatingPointError:
            raise OverflowError("q-exponential overflow") from None
    return _out(np.where(inside, r, 0.0))


def qln(q: float, y):
    """q-logarithm ``(y**(1 - q) - 1) / (1 - q)``, the inverse of :func:`qexp`."""
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise DomainError("q-logarithm needs y > 0")
    d = 1.0 - float(q)
    if abs(d) <= CLASSICAL_TOL:
        return _out(np.log(y))
    with np.errstate(over="ignore"):
        if abs(d) < _STABLE_BAND:
            r = np.expm1(d * np.log(y)) / d
        else:
            r = (y**d - 1.0) / d
    return _out(r)


def stretched_exp(p: ParamLike, x):
    """Stretched exponential ``exp(x**alpha / alpha)``, eigenfunction of the CD."""
    p = as_param(p)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("stretched exponential needs x >= 0")
    with np.errstate(over="raise"):
        try:
            r = np.exp(x**p.alpha / p.alpha)
        except FloatingPointError:
            raise OverflowError("stretched exponential overflow") from None
    return _out(r)


def dcd_eigenfunction(p: ParamLike, lam: float, x):
    """Eigenfunction of the dual conformable derivative with eigenvalue ``lam``.

    Equals ``[1 + (alpha - 1) lam x]**(1 / (alpha - 1))``, i.e. the
    q-exponential of ``lam * x`` with index ``q = 2 - alpha``.
    """
    p = as_param(p)
    return qexp(p.q(), lam * np.asarray(x, dtype=float))
