"""Logging configuration for immersion-kit."""

import logging
from typing import Any, Dict, Optional

# structlog is optional; the stdlib logger carries the same event names
try:
    import structlog
    STRUCTLOG_AVAILABLE = True
except ImportError:
    STRUCTLOG_AVAILABLE = False
    structlog = None

from ..config import settings


def setup_logging(level: Optional[str] = None) -> None:
    """Setup structured logging for the toolkit."""
    log_level = (level or settings.log_level).upper()

    if STRUCTLOG_AVAILABLE:
        renderer = (
            structlog.processors.JSONRenderer()
            if settings.log_json
            else structlog.dev.ConsoleRenderer()
        )
        structlog.configure(
            processors=[
                structlog.stdlib.filter_by_level,
                structlog.stdlib.add_logger_name,
                structlog.stdlib.add_log_level,
                structlog.stdlib.PositionalArgumentsFormatter(),
                structlog.processors.TimeStamper(fmt="iso"),
                structlog.processors.StackInfoRenderer(),
                structlog.processors.format_exc_info,
                structlog.processors.UnicodeDecoder(),
                renderer,
            ],
            context_class=dict,
            logger_factory=structlog.stdlib.LoggerFactory(),
            wrapper_class=structlog.stdlib.BoundLogger,
            cache_logger_on_first_use=True,
        )

    logging.basicConfig(
        level=getattr(logging, log_level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler()],
        force=True,
    )


class AnalysisLogger:
    """Structured logger for graph analysis events."""

    def __init__(self):
        if STRUCTLOG_AVAILABLE:
            self.logger = structlog.get_logger("analysis")
        else:
            self.logger = logging.getLogger("analysis")

    def _emit(self, level: str, event: str, **fields: Any) -> None:
        if STRUCTLOG_AVAILABLE:
            getattr(self.logger, level)(event, **fields)
        else:
            details = " ".join(f"{key}={value}" for key, value in fields.items())
            getattr(self.logger, level)(f"{event}: {details}")

    def log_containment(self, relation: str, pattern_vertices: int, host_edges: int, found: bool) -> None:
        """Log a containment query result."""
        self._emit("info", "containment_checked", relation=relation,
                   pattern_vertices=pattern_vertices, host_edges=host_edges, found=found)

    def log_cut_found(self, size: int, edges: list, side_sizes: tuple) -> None:
        """Log an internal cut chosen for splitting."""
        self._emit("debug", "cut_found", size=size, edges=edges, side_sizes=list(side_sizes))

    def log_split(self, cut_edges: list, new_vertices: tuple) -> None:
        """Log an applied split."""
        self._emit("info", "split_applied", cut_edges=cut_edges, new_vertices=list(new_vertices))

    def log_leaf_certified(self, vertices: int, edges: int, kind: str, bound: Optional[int]) -> None:
        """Log the certificate assigned to a decomposition leaf."""
        level = "warning" if kind == "uncertified" else "info"
        self._emit(level, "leaf_certified", vertices=vertices, edges=edges, kind=kind, bound=bound)

    def log_decomposition(self, components: int, splits: int, leaves: int, uncertified: int) -> None:
        """Log a finished decomposition."""
        self._emit("info", "decomposition_finished", components=components, splits=splits,
                   leaves=leaves, uncertified=uncertified)

    def log_certificate_verified(self, nodes: int, failures: int) -> None:
        """Log a certificate verification verdict."""
        level = "warning" if failures else "info"
        self._emit(level, "certificate_verified", nodes=nodes, failures=failures)

    def log_branchwidth(self, edges: int, width: int, method: str) -> None:
        """Log a computed branch-width value."""
        self._emit("info", "branchwidth_computed", edges=edges, width=width, method=method)

    def log_untangle_step(self, vertex: int, paths: tuple, potential_before: int, potential_after: int) -> None:
        """Log one exchange step of fan untangling."""
        self._emit("debug", "untangle_step", vertex=vertex, paths=list(paths),
                   potential_before=potential_before, potential_after=potential_after)

    def log_search_progress(self, order: int, generated: int, matched: int) -> None:
        """Log enumeration progress for one vertex count."""
        self._emit("info", "search_progress", order=order, generated=generated, matched=matched)

    def log_guard_exceeded(self, guard: str, limit: int, actual: int) -> None:
        """Log a scale guard hit."""
        self._emit("warning", "guard_exceeded", guard=guard, limit=limit, actual=actual)

    def log_run(self, operation: str, details: Dict[str, Any]) -> None:
        """Log a finished CLI or API run."""
        self._emit("info", "run_finished", operation=operation, **details)


# Global logger instance
analysis_logger = AnalysisLogger()
