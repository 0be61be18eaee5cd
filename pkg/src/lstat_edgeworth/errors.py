"""Exception hierarchy shared by all modules."""


class LStatError(Exception):
    """Base class for errors raised by this package."""


class DomainError(LStatError, ValueError):
    """Arguments outside the mathematical domain of an operation."""


class DegenerateStatisticError(DomainError):
    """The statistic has zero variance, so the expansion is undefined."""


class CapacityError(LStatError, RuntimeError):
    """A brute-force enumeration would exceed its configured guard."""


class PopulationParseError(LStatError, ValueError):
    """A population or weights file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
