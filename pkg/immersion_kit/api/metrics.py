"""Metrics API endpoints."""

from fastapi import APIRouter, HTTPException
from typing import Dict, Any, List
import logging

from ..core.metrics import metrics_collector

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1/metrics", tags=["metrics"])


@router.get("/overall")
async def get_overall_metrics() -> Dict[str, Any]:
    """Get overall run metrics."""
    try:
        return metrics_collector.get_overall_metrics()
    except Exception as e:
        logger.error(f"Failed to get overall metrics: {e}")
        raise HTTPException(status_code=500, detail="Failed to retrieve metrics")


@router.get("/operation/{operation}")
async def get_operation_metrics(operation: str) -> Dict[str, Any]:
    """Get aggregates for one operation."""
    try:
        return metrics_collector.get_operation_metrics(operation)
    except Exception as e:
        logger.error(f"Failed to get metrics for {operation}: {e}")
        raise HTTPException(status_code=500, detail="Failed to retrieve operation metrics")


@router.get("/recent")
async def get_recent_runs(limit: int = 10) -> List[Dict[str, Any]]:
    """Get recent runs."""
    try:
        if limit < 1 or limit > 100:
            raise HTTPException(status_code=400, detail="Limit must be between 1 and 100")

        return metrics_collector.get_recent_runs(limit)
    except HTTPException:
        raise
    except Exception as e:
        logger.error(f"Failed to get recent runs: {e}")
        raise HTTPException(status_code=500, detail="Failed to retrieve recent runs")


@router.get("/leaf-histogram")
async def get_leaf_histogram() -> Dict[int, int]:
    """Certified branch-width bounds of decomposition leaves seen so far."""
    try:
        return metrics_collector.get_leaf_histogram()
    except Exception as e:
        logger.error(f"Failed to get leaf histogram: {e}")
        raise HTTPException(status_code=500, detail="Failed to retrieve leaf histogram")
