"""Run metrics collection for immersion-kit."""

from typing import Dict, Any, Optional, List
from dataclasses import dataclass, field
from datetime import datetime
import logging
from collections import Counter, defaultdict, deque

logger = logging.getLogger(__name__)


@dataclass
class RunMetrics:
    """Metrics for a single CLI command or API request."""
    run_id: str
    operation: str
    vertices: int
    edges: int
    duration_ms: float
    outcome: str
    error_message: Optional[str] = None
    timestamp: datetime = field(default_factory=datetime.utcnow)


class MetricsCollector:
    """Collects and aggregates run metrics."""

    def __init__(self, max_history: int = 1000):
        """Initialize metrics collector."""
        self.max_history = max_history
        self.run_history: deque = deque(maxlen=max_history)
        self.operation_metrics: Dict[str, Dict[str, Any]] = defaultdict(lambda: {
            "total_runs": 0,
            "failed_runs": 0,
            "total_duration_ms": 0.0,
            "max_edges": 0,
        })
        self.leaf_width_histogram: Counter = Counter()

    def record_run(self, metrics: RunMetrics) -> None:
        """Record run metrics."""
        self.run_history.append(metrics)

        stats = self.operation_metrics[metrics.operation]
        stats["total_runs"] += 1
        if metrics.error_message:
            stats["failed_runs"] += 1
        stats["total_duration_ms"] += metrics.duration_ms
        stats["max_edges"] = max(stats["max_edges"], metrics.edges)

    def record_leaf_widths(self, widths: List[int]) -> None:
        """Record certified branch-width bounds of decomposition leaves."""
        self.leaf_width_histogram.update(widths)

    def get_overall_metrics(self) -> Dict[str, Any]:
        """Get overall metrics."""
        if not self.run_history:
            return {
                "total_runs": 0,
                "success_rate": 0.0,
                "avg_duration_ms": 0.0,
                "operations": 0,
            }

        total_runs = len(self.run_history)
        successful = sum(1 for run in self.run_history if not run.error_message)
        total_duration = sum(run.duration_ms for run in self.run_history)

        return {
            "total_runs": total_runs,
            "success_rate": successful / total_runs,
            "avg_duration_ms": total_duration / total_runs,
            "operations": len(self.operation_metrics),
        }

    def get_operation_metrics(self, operation: str) -> Dict[str, Any]:
        """Get aggregates for one operation."""
        stats = self.operation_metrics.get(operation)
        if stats is None:
            return {"total_runs": 0, "failed_runs": 0, "avg_duration_ms": 0.0, "max_edges": 0}
        return {
            "total_runs": stats["total_runs"],
            "failed_runs": stats["failed_runs"],
            "avg_duration_ms": stats["total_duration_ms"] / stats["total_runs"],
            "max_edges": stats["max_edges"],
        }

    def get_recent_runs(self, limit: int = 10) -> List[Dict[str, Any]]:
        """Get recent runs."""
        recent = list(self.run_history)[-limit:]
        return [
            {
                "run_id": run.run_id,
                "operation": run.operation,
                "vertices": run.vertices,
                "edges": run.edges,
                "duration_ms": run.duration_ms,
                "outcome": run.outcome,
                "success": not run.error_message,
                "timestamp": run.timestamp.isoformat(),
            }
            for run in recent
        ]

    def get_leaf_histogram(self) -> Dict[int, int]:
        """Get the histogram of certified leaf branch-width bounds."""
        return dict(sorted(self.leaf_width_histogram.items()))


# Global metrics collector instance
metrics_collector = MetricsCollector()
