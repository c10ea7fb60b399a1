"""Health check API endpoints."""

from fastapi import APIRouter
from typing import Dict, Any
import logging

from ..config import settings
from ..services.embedding import EmbeddingService
from ..services.generators import cube_graph
from ..services.relations import K5, RelationsService

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1/health", tags=["health"])

embedding_service = EmbeddingService()
relations_service = RelationsService()


@router.get("/")
async def health_check() -> Dict[str, Any]:
    """Basic health check."""
    return {
        "status": "healthy",
        "service": "immersion-kit",
        "version": "1.0.0"
    }


@router.get("/detailed")
async def detailed_health_check() -> Dict[str, Any]:
    """Detailed health check running a tiny self-test per subsystem."""
    health_status = {
        "status": "healthy",
        "service": "immersion-kit",
        "version": "1.0.0",
        "checks": {}
    }

    try:
        rs = embedding_service.embed_planar(cube_graph())
        healthy = rs is not None and rs.is_spherical() and not embedding_service.is_planar(K5)
        health_status["checks"]["planarity"] = {"status": "healthy" if healthy else "unhealthy"}
        if not healthy:
            health_status["status"] = "degraded"
    except Exception as e:
        health_status["checks"]["planarity"] = {"status": "unhealthy", "error": str(e)}
        health_status["status"] = "degraded"

    try:
        found = relations_service.contains_immersion(K5, K5) is not None
        health_status["checks"]["containment"] = {"status": "healthy" if found else "unhealthy"}
        if not found:
            health_status["status"] = "degraded"
    except Exception as e:
        health_status["checks"]["containment"] = {"status": "unhealthy", "error": str(e)}
        health_status["status"] = "degraded"

    health_status["checks"]["guards"] = {
        "immersion_max_host_edges": settings.immersion_max_host_edges,
        "branchwidth_exact_max_edges": settings.branchwidth_exact_max_edges,
        "search_max_vertices": settings.search_max_vertices,
    }
    return health_status
