"""Exception hierarchy shared by all aqfs modules.

The CLI maps these onto exit codes: configuration/usage problems exit 2,
data problems exit 3, numerical problems (including level crossings) exit 4.
"""


class AQFSError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(AQFSError):
    """Invalid user-supplied configuration (bad k, missing target, ...)."""


class CapacityError(ConfigurationError):
    """Problem size exceeds a hard resource cap (dense matrices, enumeration)."""


class DataError(AQFSError):
    """Invalid data content (non-finite values, length mismatches, ...)."""


class ParseError(DataError):
    """Malformed delimited input."""


class DegenerateInputError(DataError):
    """Input is degenerate for the requested operation (e.g. all-zero matrix)."""


class ShapeError(AQFSError):
    """Operands have incompatible dimensions."""


class DomainError(AQFSError):
    """Scalar argument outside its mathematical domain."""


class StateError(AQFSError):
    """State vector violates normalization."""


class MatrixError(AQFSError):
    """Matrix violates a structural requirement (hermiticity, diagonality)."""


class DegenerateGapError(AQFSError):
    """Spectral gap closed to (numerical) zero; adiabatic bounds undefined."""


class NumericalInstabilityError(AQFSError):
    """Non-finite values appeared during numerical integration."""
