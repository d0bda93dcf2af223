"""
Custom exceptions for the quantum characteristic exponent laboratory.
"""
from typing import Any, List, Optional


class QCEException(Exception):
    """Base exception for all laboratory errors."""

    def __init__(self, message: str, **context: Any):
        self.message = message
        self.context = context
        super().__init__(self.message)


class BandLimitError(QCEException):
    """Wavevector lies outside the representable Fourier band of the grid."""

    def __init__(self, message: str, wavevector: Any = None, band: Optional[tuple] = None):
        self.wavevector = wavevector
        self.band = band
        super().__init__(message, wavevector=wavevector, band=band)


class DegenerateAverageError(QCEException):
    """Every grid point was excluded from a log-average."""

    def __init__(self, message: str, excluded: int = 0):
        self.excluded = excluded
        super().__init__(message, excluded=excluded)


class UnderdeterminedFitError(QCEException):
    """Not enough points to determine the exponent fit parameters."""
    pass


class UnitarityGuardError(QCEException):
    """Roundtrip U^-n U^n error exceeded the configured epsilon."""

    def __init__(self, message: str, n: int = 0, error: float = 0.0, epsilon: float = 0.0):
        self.n = n
        self.error = error
        self.epsilon = epsilon
        super().__init__(message, n=n, error=error, epsilon=epsilon)


class InvalidMatrixError(QCEException):
    """Kick matrix is not an integer det-1 (hyperbolic) matrix."""
    pass


class ConfigValidationError(QCEException):
    """Experiment configuration failed validation."""

    def __init__(self, message: str, problems: Optional[List[str]] = None):
        self.problems = problems or []
        super().__init__(message, problems=self.problems)


class ChartDataError(QCEException):
    """Trace CSV could not be parsed for charting."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        super().__init__(message, line_number=line_number)


class ArtifactWriteError(QCEException):
    """Output directory or artifact file could not be written."""
    pass
