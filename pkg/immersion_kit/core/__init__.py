"""Core package for immersion-kit."""

from .exceptions import (
    ImmersionKitError,
    GraphDomainError,
    CapacityError,
    GraphFormatError,
    CertificateError,
    ModelValidationError,
    InternalInvariantError,
)
from .metrics import MetricsCollector, RunMetrics, metrics_collector
from .logging import setup_logging, analysis_logger

__all__ = [
    "ImmersionKitError",
    "GraphDomainError",
    "CapacityError",
    "GraphFormatError",
    "CertificateError",
    "ModelValidationError",
    "InternalInvariantError",
    "MetricsCollector",
    "RunMetrics",
    "metrics_collector",
    "setup_logging",
    "analysis_logger",
]
