"""Exception hierarchy shared by all spineq modules."""


class SpinEqError(Exception):
    """Base class for all spineq errors."""


class DomainError(SpinEqError, ValueError):
    """Input outside the mathematical domain of an operation."""


class SingularityError(SpinEqError):
    """Evaluation hit a pole of the field or of an auxiliary function."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class AccuracyError(SpinEqError):
    """A numerical routine could not reach its accuracy target."""


class IntegrationError(SpinEqError):
    """Adaptive propagation failed (e.g. step-size underflow)."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class FieldParseError(SpinEqError, ValueError):
    """Syntax or identifier error in a field expression."""

    def __init__(self, message, line=None, col=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}, col {col})"
        super().__init__(message + loc)
        self.line = line
        self.col = col
