"""Exception types shared across the package."""

from __future__ import annotations


class GraphParseError(ValueError):
    """Malformed graph or vector file. Carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParameterError(ValueError):
    """A parameter is outside its valid domain, or a supplied value fails validation."""


class FactorizationError(RuntimeError):
    """A dense factorization failed to converge.

    ``condition_estimate`` holds a rough condition number of the offending
    matrix when one could be computed, else ``inf``.
    """

    def __init__(self, message: str, condition_estimate: float = float("inf")):
        self.condition_estimate = condition_estimate
        super().__init__(f"{message} (condition estimate: {condition_estimate:.3e})")
