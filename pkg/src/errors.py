import numpy as np
import pydantic


class DoaError(Exception):
    """Base class for every error raised by the toolkit."""


class ValidationError(DoaError, ValueError):
    """Inputs violate a documented precondition."""


class DimensionError(ValidationError):
    pass


class DegenerateDegreeError(ValidationError):
    """Leading coefficient c_q vanished, so the polynomial lost a degree."""


class ParseError(ValidationError):
    def __init__(self, message, line, column=None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class NumericalError(DoaError, ArithmeticError):
    pass


class SingularityError(NumericalError):
    """A Gram matrix is too ill-conditioned to invert reliably."""


class PropertyViolation(NumericalError):
    pass


# --- Exit Codes ---
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


def exit_code_for(exc):
    """Exit code for any exception a command raises; app.main routes every failure here."""
    if isinstance(exc, (ValidationError, pydantic.ValidationError)):
        return EXIT_VALIDATION
    if isinstance(exc, (ArithmeticError, np.linalg.LinAlgError)):
        return EXIT_NUMERICAL
    if isinstance(exc, OSError):
        return EXIT_IO
    # Plain ValueErrors come from numpy/yaml parsing of user input
    if isinstance(exc, ValueError):
        return EXIT_VALIDATION
    # anything unforeseen
    return EXIT_NUMERICAL
