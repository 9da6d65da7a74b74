"""Exception hierarchy shared by every module of the package."""


class DeformCalcError(Exception):
    """Base class for all errors raised by :mod:`deformcalc`."""


class DomainError(DeformCalcError, ValueError):
    """An argument lies outside the real-valued domain of an operation."""


class SupportError(DomainError):
    """A q-exponential was evaluated where ``1 + (1 - q) x <= 0``."""


class NumericsError(DeformCalcError, ArithmeticError):
    """A function produced a non-finite value during a numeric procedure."""


class ConvergenceError(NumericsError):
    """Richardson extrapolants of a limit evaluator failed to settle."""


class QuadratureError(NumericsError):
    """Adaptive quadrature could not reach its tolerance within budget."""


class StepError(NumericsError):
    """An ODE integrator state became non-finite."""


class UnboundVariable(DeformCalcError, KeyError):
    """An expression refers to a variable with no binding."""

    def __str__(self) -> str:
        return Exception.__str__(self)


class UnsupportedNode(DeformCalcError, TypeError):
    """The symbolic differentiator met a node it has no rule for."""


class InsufficientSamples(DeformCalcError, RuntimeError):
    """Fewer than half of the requested identity samples were valid."""


class ParseError(DeformCalcError, ValueError):
    """Malformed expression text.

    ``position`` is the 0-based UTF-8 byte offset of the first offending token.
    """

    def __init__(self, position: int, message: str):
        super().__init__(f"{message} (at offset {position})")
        self.position = position
        self.message = message
