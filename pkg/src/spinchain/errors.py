"""Exception types shared across the package."""


class SpinChainError(Exception):
    """Base class for all package errors."""


class ParameterError(SpinChainError, ValueError):
    """Invalid model parameter or argument (bad N, J, site index, ...)."""


class DomainError(SpinChainError, ValueError):
    """Scalar argument outside the mathematical domain of a function."""


class StateValidityError(SpinChainError, ValueError):
    """A quantum state violates its contract (trace, hermiticity, PSD, norm)."""


class NumericError(SpinChainError, ArithmeticError):
    """Numerical failure (eigensolver non-convergence, invalid spectrum)."""


class MeasurementError(SpinChainError, RuntimeError):
    """Projective measurement outcome has zero probability."""
