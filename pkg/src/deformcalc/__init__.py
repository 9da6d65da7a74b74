"""Numeric and symbolic engine for conformable and dual conformable calculus."""

from .algebra import DeformParam, csub, dcd_eigenfunction, qexp, qln, stretched_exp
from .errors import (
    ConvergenceError,
    DeformCalcError,
    DomainError,
    InsufficientSamples,
    NumericsError,
    ParseError,
    QuadratureError,
    StepError,
    SupportError,
    UnboundVariable,
    UnsupportedNode,
)
from .operators import (
    LimitSchedule,
    RealFunction,
    cd,
    cd_integral,
    cd_limit,
    chen,
    chen_limit,
    dcd,
    dcd_antiderivative_strict,
    dcd_integral_paper,
    dcd_limit,
)
from .report import PropertyEntry, PropertyReport
from .solvers import (
    GridFunction,
    OscillatorConfig,
    SolverEvent,
    Trajectory,
    residual,
    solve_cd_eigen,
    solve_dcd_eigen,
    solve_oscillator,
)
from .verifier import ftc_dual_comparison, run_suite

__version__ = "0.1.0"
