"""
Haystack Exceptions Module

Defines the exception hierarchy for Haystack error handling.
Every error carries a short prefix so the CLI can print one-line reports
in the same shape regardless of where the failure happened.
"""


class HaystackError(Exception):
    """
    Base exception for all Haystack errors.

    Attributes:
        prefix: str - Error prefix (e.g., 'ERR', 'DIM')
    """

    prefix = 'ERR'

    def __init__(self, message=None):
        """
        Initialize Haystack error.

        Args:
            message: str - Error message (without prefix)
        """
        self.message = message
        if message:
            super().__init__(f'{self.prefix} {message}')
        else:
            super().__init__(self.prefix)

    def to_line(self):
        """
        Render as a single report line for the CLI.

        Returns:
            str: '(error) PREFIX message'
        """
        return f'(error) {self}'


class DimensionError(HaystackError):
    """
    Raised when array shapes do not conform.

    Example: affine() with a 2x3 matrix and a length-2 vector.
    """

    prefix = 'DIM'

    def __init__(self, message='shape mismatch'):
        super().__init__(message)


class ParameterError(HaystackError):
    """
    Raised when an argument value is outside its domain.

    Example: uniform() with lo >= hi, a bound with delta outside (0, 1).
    """

    prefix = 'PARAM'

    def __init__(self, message='invalid parameter'):
        super().__init__(message)


class SingularityError(HaystackError):
    """
    Raised when a least-squares system is degenerate (all x equal).
    """

    prefix = 'SINGULAR'

    def __init__(self, message='degenerate abscissae, normal equations are singular'):
        super().__init__(message)


class InsufficientDataError(HaystackError):
    """
    Raised when a scaling fit is left with fewer than two distinct x values.
    """

    prefix = 'NODATA'

    def __init__(self, message='need at least 2 distinct x values to fit'):
        super().__init__(message)


class ConfigError(HaystackError):
    """
    Raised for unknown or malformed configuration keys.
    """

    prefix = 'CONFIG'

    def __init__(self, message='invalid configuration'):
        super().__init__(message)


class WeightsFormatError(HaystackError):
    """
    Raised when a weight snapshot fails magic, version, CRC or shape checks.
    """

    prefix = 'WEIGHTS'

    def __init__(self, message='invalid weight snapshot'):
        super().__init__(message)


class SweepCellError(HaystackError):
    """
    Raised when one sweep cell fails; carries the cell identity.

    Attributes:
        cell: tuple - (arch, d, n_total, seed) of the failing cell
    """

    prefix = 'CELL'

    def __init__(self, cell, reason):
        self.cell = cell
        self.reason = reason
        arch, d, n_total, seed = cell
        super().__init__(f'arch={arch} d={d} n_total={n_total} seed={seed}: {reason}')

    def __reduce__(self):
        # Rebuild from (cell, reason) when crossing a worker process boundary
        return (type(self), (self.cell, self.reason))


class BoundRegimeWarning(UserWarning):
    """
    Issued when a bound is evaluated outside the regime its theorem assumes.

    Example: a priori bound with lambda below 4*sqrt(2*ln(2d)/n).
    """
