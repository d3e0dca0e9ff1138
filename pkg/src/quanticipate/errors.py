"""Exception types shared across the package."""


class QuanticipateError(Exception):
    """Base class for all package-specific errors."""


class InvalidDimensionError(QuanticipateError, ValueError):
    """Spectrum dimension is too small for the requested operation."""


class PrescribedInputError(QuanticipateError, ValueError):
    """User-supplied spectrum/measure text failed validation."""


class SingularSpectrumError(QuanticipateError):
    """Reduced spectrum has fewer than 2L+1 points; the system cannot be solved."""


class IllConditionedError(QuanticipateError):
    """Exponential nodes too close together for a reliable inversion."""


class SymmetryViolationError(QuanticipateError):
    """Imaginary residue of a should-be-real quantity exceeded tolerance."""


class CyclingError(QuanticipateError):
    """Simplex pivot limit exceeded; reported instead of hanging."""
