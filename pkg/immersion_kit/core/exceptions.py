"""Exception hierarchy for immersion-kit."""

from typing import Optional


class ImmersionKitError(Exception):
    """Base class for every error raised by the toolkit."""


class GraphDomainError(ImmersionKitError, ValueError):
    """An operation was called with unknown ids or violated preconditions."""


class CapacityError(ImmersionKitError):
    """A scale guard was exceeded."""

    def __init__(self, guard: str, limit: int, actual: int):
        self.guard = guard
        self.limit = limit
        self.actual = actual
        super().__init__(
            f"{guard} exceeded: {actual} > {limit} (pass guard_override=True to force)"
        )


class GraphFormatError(ImmersionKitError, ValueError):
    """Malformed graph, rotation-system or fan text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class CertificateError(ImmersionKitError, ValueError):
    """Malformed decomposition certificate or decomposition tree."""


class ModelValidationError(ImmersionKitError):
    """A search produced a model that failed independent re-validation."""


class InternalInvariantError(ImmersionKitError):
    """A runtime check of a proven property failed."""
