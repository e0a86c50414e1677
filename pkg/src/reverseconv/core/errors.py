"""
Exception hierarchy shared by every reverseconv module.

ValueError subclasses signal bad inputs, ArithmeticError subclasses signal
numerical failures; the CLI maps the two families to distinct exit codes.
"""

from typing import Optional


class ReverseConvError(Exception):
    """Base class for all reverseconv errors."""


class FormatError(ReverseConvError, ValueError):
    """Malformed WRCT magic, version, role or header."""


class TruncatedPayloadError(ReverseConvError, OSError):
    """WRCT payload shorter than its header declares."""


class ValidationError(ReverseConvError, ValueError):
    """A value violates a type invariant (non-finite, negative weight, ...)."""


class DimensionError(ReverseConvError, ValueError):
    """Shapes are inconsistent or not divisible by the scale."""


class ContractError(ReverseConvError, ValueError):
    """An operation precondition does not hold."""


class CapacityError(ReverseConvError, ValueError):
    """The dense oracle size guard was exceeded."""


class NumericalConsistencyError(ReverseConvError, ArithmeticError):
    """A numerical self-check failed (imaginary residue, solve residual)."""


class SingularityError(ReverseConvError, ArithmeticError):
    """The normal-equations matrix is not positive definite."""

    def __init__(self, message: str, condition: Optional[float] = None):
        super().__init__(message)
        self.condition = condition
