"""Exception hierarchy. The CLI maps each family onto an exit code."""


class NoonsimError(Exception):
    """Base class for all package errors."""


class ArgumentError(NoonsimError, ValueError):
    """Bad arguments to an operation (CLI exit code 5)."""


class InvalidN(ArgumentError):
    pass


class InvalidRate(ArgumentError):
    pass


class InvalidVCrit(ArgumentError):
    pass


class NegativeTime(ArgumentError):
    pass


class EmptyGrid(ArgumentError):
    pass


class UndersampledPhase(ArgumentError):
    pass


class DimensionMismatch(ArgumentError):
    pass


class NotNormalized(ArgumentError):
    pass


class NumericalError(NoonsimError, ArithmeticError):
    """Numerical failure (CLI exit code 4)."""


class NonHermitianInput(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class StepTooLarge(NumericalError):
    pass


class ParseError(NoonsimError, ValueError):
    """Malformed state file (CLI exit code 2)."""

    def __init__(self, line_no, reason):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class ValidationFailed(NoonsimError, ValueError):
    """A matrix failed the physical-state checks (CLI exit code 3)."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"state validation failed: {report.summary()}")
