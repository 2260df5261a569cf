"""Exception hierarchy.  CLI exit codes hang off the class."""


class HbootError(Exception):
    exit_code = 1


class DomainError(HbootError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class ValidationError(HbootError, ValueError):
    """Input data failed validation (malformed rows, negative counts, ...)."""


class InfeasibleConfigError(HbootError, ValueError):
    """Requested (method, level, B) combination cannot be computed."""

    exit_code = 3
