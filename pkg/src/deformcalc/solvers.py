r"""Solvers for the deformed eigenvalue equations and the deformed oscillator.

* conformable eigen problem :math:`x^{1-\alpha} y' = \lambda y`, solved exactly
  in ``u = x^alpha / alpha`` where it reads ``dy/du = lambda y``;
* dual eigen problem :math:`F^{\alpha-1} F' = \lambda F`, i.e.
  ``F' = lambda F^(2-alpha)``, by fixed-step RK4 with blow-up detection;
* oscillator :math:`x^{\alpha-1} \frac{d}{dt}(x^{\alpha-1}\dot x) = -\omega^2 x`,
  by fixed-step RK4 on ``x'' = -w^2 x^(3-2 alpha) - (alpha-1) x'^2 / x``.

Singular events end the integration and are recorded on the result rather
than raised, so the partial solution is still available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from .algebra import DeformParam, ParamLike, as_param
from .errors import DomainError, StepError

__all__ = [
    "BLOW_UP",
    "SUPPORT_EXIT",
    "ZERO_CROSSING",
    "GridFunction",
    "OscillatorConfig",
    "SolverEvent",
    "Trajectory",
    "oscillator_energy",
    "residual",
    "solve_cd_eigen",
    "solve_dcd_eigen",
    "solve_oscillator",
]

BLOW_UP = "blow-up"
SUPPORT_EXIT = "support-exit"
ZERO_CROSSING = "zero-crossing"

# a step growing the solution by more than this factor is taken as unresolved blow-up
_GROWTH_LIMIT = 1.0
# for alpha != 1 a step shrinking x by more than this fraction is an unresolved approach to x = 0
_APPROACH_LIMIT = 0.1


@dataclass(frozen=True)
class SolverEvent:
    """Singularity met during integration.

    ``at`` is the last accepted node; ``estimate`` a best guess of where the
    singularity lies (``None`` when not available).
    """

    kind: str
    at: float
    estimate: Optional[float] = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind, "at": self.at, "estimate": self.estimate, "detail": self.detail}


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of a real function on a strictly increasing grid."""

    nodes: np.ndarray
    values: np.ndarray
    event: Optional[SolverEvent] = None

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if nodes.ndim != 1 or nodes.shape != values.shape:
            raise ValueError("nodes and values must be 1-D arrays of equal length")
        if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(values))):
            raise ValueError("grid function entries must be finite")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.nodes)

    def interpolant(self) -> CubicSpline:
        return CubicSpline(self.nodes, self.values)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Oscillator states ``(t, x, v)`` with the deformed energy ``E`` per node."""

    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    E: np.ndarray
    event: Optional[SolverEvent] = None

    def __post_init__(self):
        cols = [np.asarray(c, dtype=float) for c in (self.t, self.x, self.v, self.E)]
        if len({c.shape for c in cols}) != 1 or cols[0].ndim != 1:
            raise ValueError("trajectory columns must be 1-D of equal length")
        if not all(np.all(np.isfinite(c)) for c in cols):
            raise ValueError("trajectory entries must be finite")
        if np.any(np.diff(cols[0]) <= 0):
            raise ValueError("t must be strictly increasing")
        for name, c in zip("t x v E".split(), cols):
            object.__setattr__(self, name, c)

    def __len__(self) -> int:
        return len(self.t)


@dataclass(frozen=True)
class OscillatorConfig:
    alpha: DeformParam
    omega: float
    x0: float
    v0: float
    t_end: float
    steps: int = 1024

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_param(self.alpha))
        if not self.omega >= 0:
            raise DomainError("omega must be >= 0")
        if not self.x0 > 0:
            raise DomainError("x0 must be > 0 (the equation is singular at x = 0)")
        if not self.t_end > 0:
            raise DomainError("t_end must be > 0")
        if int(self.steps) != self.steps or self.steps < 16:
            raise DomainError("steps must be an integer >= 16")


def _rk4_step(rhs, y, h):
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * h * k1)
    k3 = rhs(y + 0.5 * h * k2)
    k4 = rhs(y + h * k3)
    return y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def solve_cd_eigen(
    p: ParamLike, lam: float, x0: float, y0: float, x_end: float, steps: int = 256
) -> GridFunction:
    """Solve ``x^(1-alpha) y' = lam y`` with ``y(x0) = y0`` on ``[x0, x_end]``.

    Exact: ``y = y0 exp(lam (x^alpha - x0^alpha) / alpha)``.
    """
    p = as_param(p)
    if not x0 > 0:
        raise DomainError("conformable eigen problem needs x0 > 0")
    if not x_end > x0:
        raise DomainError("x_end must exceed x0")
    x = np.linspace(x0, x_end, int(steps) + 1)
    u = x**p.alpha / p.alpha
    y = y0 * np.exp(lam * (u - u[0]))
    y[0] = y0
    return GridFunction(x, y)


def solve_dcd_eigen(
    p: ParamLike, lam: float, F0: float, x_end: float, steps: int = 256
) -> GridFunction:
    """Integrate ``F' = lam F^(2-alpha)``, ``F(0) = F0``, on ``[0, x_end]`` by RK4.

    For ``alpha < 1`` and ``lam > 0`` the solution blows up at
    ``F0^(alpha-1) / ((1-alpha) lam)``; for ``alpha > 1`` and ``lam < 0`` it
    reaches zero at ``F0^(alpha-1) / ((alpha-1) |lam|)``. Either way the
    integration stops at the last node strictly before the singular point and
    records a :class:`SolverEvent`.
    """
    p = as_param(p)
    if not F0 > 0:
        raise DomainError("dual eigen problem needs F0 > 0")
    if not x_end > 0:
        raise DomainError("x_end must be > 0")
    k = 2.0 - p.alpha
    h = x_end / int(steps)

    def rhs(F):
        if not F > 0:
            raise FloatingPointError
        return lam * F**k

    xs = [0.0]
    Fs = [float(F0)]
    event = None
    for n in range(1, int(steps) + 1):
        F = Fs[-1]
        try:
            with np.errstate(all="raise"):
                Fn = float(_rk4_step(rhs, F, h))
        except (FloatingPointError, OverflowError, ZeroDivisionError):
            Fn = math.nan
        kind = None
        if not math.isfinite(Fn):
            kind = BLOW_UP if lam * (1.0 - p.alpha) > 0 else SUPPORT_EXIT
        elif Fn <= 0:
            kind = SUPPORT_EXIT
        elif k > 1 and lam > 0 and (Fn - F) > _GROWTH_LIMIT * F:
            kind = BLOW_UP
        elif k < 1 and lam < 0 and (F - Fn) > 0.5 * F:
            # approaching the zero of the support boundary, F' unbounded relative to F
            kind = SUPPORT_EXIT
        if kind is not None:
            # for F' = lam F^k the remaining distance follows from the current state
            est = xs[-1] + F ** (1.0 - k) / ((k - 1.0) * lam)
            event = SolverEvent(kind, xs[-1], est, f"RK4 step from x={xs[-1]:.17g} left the resolved regime")
            break
        xs.append(n * h)
        Fs.append(Fn)
    return GridFunction(np.array(xs), np.array(Fs), event)


def oscillator_energy(alpha: float, omega: float, x, v):
    """Conserved deformed energy ``(x^(alpha-1) v)^2 / 2 + omega^2 x^2 / 2``."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    return 0.5 * (x ** (alpha - 1.0) * v) ** 2 + 0.5 * omega**2 * x**2


def solve_oscillator(c: OscillatorConfig) -> Trajectory:
    """Integrate the deformed oscillator from ``(x0, v0)`` over ``[0, t_end]``.

    Stops with a zero-crossing event once ``x <= x0 * 1e-6``, when a stage
    leaves ``x > 0``, or (for ``alpha != 1``, where the equation is singular at
    the origin) when one step shrinks ``x`` by more than a tenth, since the
    fixed step no longer resolves the approach to ``x = 0``. Raises
    :class:`StepError` on any other non-finite state.
    """
    a = c.alpha.alpha
    w2 = c.omega**2
    threshold = c.x0 * 1e-6
    h = c.t_end / c.steps

    def rhs(y):
        x, v = y
        if not x > 0:
            raise _LeftDomain
        return np.array([v, -w2 * x ** (3.0 - 2.0 * a) - (a - 1.0) * v * v / x])

    y = np.array([c.x0, c.v0], dtype=float)
    ts, xs, vs = [0.0], [y[0]], [y[1]]
    event = None
    for n in range(1, c.steps + 1):
        try:
            with np.errstate(over="raise", invalid="raise"):
                yn = _rk4_step(rhs, y, h)
        except _LeftDomain:
            yn = None
        except FloatingPointError as exc:
            raise StepError(f"oscillator state became non-finite near t={ts[-1]:.17g}") from exc
        unresolved = (
            yn is not None and not c.alpha.is_classical() and y[0] - yn[0] > _APPROACH_LIMIT * y[0]
        )
        if yn is None or yn[0] <= threshold or unresolved:
            est = float(ts[-1] + y[0] / -y[1]) if y[1] < 0 else None
            event = SolverEvent(ZERO_CROSSING, ts[-1], est, "x reached the singular point x = 0")
            break
        if not np.all(np.isfinite(yn)):
            raise StepError(f"oscillator state became non-finite near t={ts[-1]:.17g}")
        y = yn
        ts.append(n * h)
        xs.append(y[0])
        vs.append(y[1])
    x = np.array(xs)
    v = np.array(vs)
    return Trajectory(np.array(ts), x, v, oscillator_energy(a, c.omega, x, v), event)


class _LeftDomain(Exception):
    pass


# --------------------------------------------------------------------------
# residuals


def _ddx(t: np.ndarray, y: np.ndarray):
    """Centered derivative at interior nodes; fourth order on uniform grids."""
    n = len(t)
    h = np.diff(t)
    uniform = np.allclose(h, h[0], rtol=1e-9, atol=0)
    if uniform and n >= 5:
        d = (y[:-4] - 8 * y[1:-3] + 8 * y[3:-1] - y[4:]) / (12 * h[0])
        return np.arange(2, n - 2), d
    d = np.gradient(y, t)[1:-1]
    return np.arange(1, n - 1), d


def _rel(lhs, rhs):
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    scale = np.maximum(np.abs(lhs), np.abs(rhs))
    with np.errstate(invalid="ignore", divide="ignore"):
        r = np.where(scale > 0, np.abs(lhs - rhs) / np.where(scale > 0, scale, 1.0), 0.0)
    return r


def residual(solution, equation: str, p: ParamLike, lam: float = 1.0, omega: float = 1.0) -> float:
    """Largest relative residual of ``solution`` in its defining equation.

    ``equation`` is ``"cd-eigen"``, ``"dcd-eigen"`` or ``"oscillator"``.
    Derivatives are centered differences over interior nodes; each residual
    is scaled by the larger of the two sides at that node.
    """
    al = as_param(p).alpha
    if equation in ("cd-eigen", "dcd-eigen"):
        t, y = solution.nodes, solution.values
        if len(t) < 3:
            raise ValueError("residual needs at least 3 nodes")
        idx, dy = _ddx(t, y)
        if equation == "cd-eigen":
            lhs = t[idx] ** (1.0 - al) * dy
        else:
            lhs = y[idx] ** (al - 1.0) * dy
        return float(np.max(_rel(lhs, lam * y[idx])))
    if equation == "oscillator":
        t, x, v = solution.t, solution.x, solution.v
        if len(t) < 3:
            raise ValueError("residual needs at least 3 nodes")
        idx, dx = _ddx(t, x)
        kinematic = _rel(dx, v[idx])
        idx, dw = _ddx(t, x ** (al - 1.0) * v)
        dynamic = _rel(x[idx] ** (al - 1.0) * dw, -(omega**2) * x[idx])
        return float(max(np.max(kinematic), np.max(dynamic)))
    raise ValueError(f"unknown equation {equation!r}")
