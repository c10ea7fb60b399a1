"""API package for immersion-kit."""

from .analysis import router as analysis_router
from .health import router as health_router
from .metrics import router as metrics_router

__all__ = ["analysis_router", "health_router", "metrics_router"]
