"""Scale guards for exponential searches."""

from .exceptions import CapacityError
from .logging import analysis_logger


def enforce_guard(guard: str, limit: int, actual: int, override: bool = False) -> None:
    """Raise ``CapacityError`` when ``actual`` exceeds ``limit`` unless overridden."""
    if actual <= limit:
        return
    analysis_logger.log_guard_exceeded(guard, limit, actual)
    if not override:
        raise CapacityError(guard, limit, actual)
