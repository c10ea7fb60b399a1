"""Analysis API endpoints."""

import logging
import time
import uuid
from typing import Optional

from fastapi import APIRouter, HTTPException

from ..core.exceptions import CapacityError, CertificateError, GraphDomainError, GraphFormatError
from ..core.metrics import RunMetrics, metrics_collector
from ..models.analysis import (
    BranchwidthRequest,
    BranchwidthResponse,
    CheckRequest,
    CheckResponse,
    DecomposeRequest,
    DecomposeResponse,
    RelationKind,
)
from ..models.graph import MultiGraph
from ..services.branchwidth import BranchwidthService
from ..services.certificate import dump_certificate, dump_witness, parse_certificate
from ..services.decomposer import DecomposerService
from ..services.graph_io import parse_graph
from ..services.relations import K33, K5, RelationsService

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api/v1/analysis", tags=["analysis"])

relations_service = RelationsService()
decomposer_service = DecomposerService()
branchwidth_service = BranchwidthService()


def _record(operation: str, graph: Optional[MultiGraph], start: float, outcome: str,
            error: Optional[str] = None) -> float:
    duration_ms = (time.time() - start) * 1000
    metrics_collector.record_run(RunMetrics(
        run_id=str(uuid.uuid4()),
        operation=operation,
        vertices=graph.order if graph is not None else 0,
        edges=graph.size if graph is not None else 0,
        duration_ms=duration_ms,
        outcome=outcome,
        error_message=error,
    ))
    return duration_ms


def _reject(operation: str, graph: MultiGraph, start: float, exc: Exception) -> HTTPException:
    _record(operation, graph, start, "rejected", str(exc))
    status = 422 if isinstance(exc, (GraphFormatError, CertificateError)) else 400
    return HTTPException(status_code=status, detail=str(exc))


def _pattern(text: str) -> MultiGraph:
    if text == "k5":
        return K5
    if text == "k33":
        return K33
    return parse_graph(text)


@router.post("/check", response_model=CheckResponse)
async def check(request: CheckRequest) -> CheckResponse:
    """Containment query with a re-validated witness."""
    start = time.time()
    host = None
    try:
        host = parse_graph(request.graph)
        pattern = _pattern(request.pattern)
        if request.relation == RelationKind.MINOR:
            model = relations_service.contains_minor(host, pattern, request.guard_override)
        elif request.relation == RelationKind.TOPOLOGICAL_MINOR:
            model = relations_service.contains_topological_minor(host, pattern, request.guard_override)
        else:
            strong = request.relation == RelationKind.STRONG_IMMERSION
            model = relations_service.contains_immersion(host, pattern, strong, request.guard_override)
    except (GraphDomainError, GraphFormatError, CapacityError) as e:
        raise _reject("check", host, start, e)

    duration_ms = _record("check", host, start, "contained" if model else "absent")
    return CheckResponse(
        contained=model is not None,
        relation=request.relation,
        witness=dump_witness(model) if model is not None else None,
        execution_time_ms=duration_ms,
    )


@router.post("/decompose", response_model=DecomposeResponse)
async def decompose(request: DecomposeRequest) -> DecomposeResponse:
    """Decompose along internal cuts of size at most three and certify the leaves."""
    start = time.time()
    graph = None
    try:
        graph = parse_graph(request.graph)
        trees = decomposer_service.decompose(graph, witnesses=request.witnesses)
        certificate = dump_certificate(trees)
        verification = None
        if request.verify:
            parsed = parse_certificate(certificate, decomposer_service.connectivity)
            verification = decomposer_service.verify_certificate(graph, parsed)
    except (GraphDomainError, GraphFormatError, CertificateError, CapacityError) as e:
        raise _reject("decompose", graph, start, e)

    summary = decomposer_service.summarize(trees)
    outcome = "certified" if summary.fully_certified else "uncertified"
    duration_ms = _record("decompose", graph, start, outcome)
    return DecomposeResponse(
        certificate=certificate,
        summary=summary,
        verification=verification,
        execution_time_ms=duration_ms,
    )


@router.post("/branchwidth", response_model=BranchwidthResponse)
async def branchwidth(request: BranchwidthRequest) -> BranchwidthResponse:
    """Branch-width bounds with a witness decomposition."""
    start = time.time()
    graph = None
    try:
        graph = parse_graph(request.graph)
        if request.exact:
            upper, bd = branchwidth_service.branchwidth_exact(graph, guard_override=request.guard_override)
            lower = upper
        else:
            upper, bd = branchwidth_service.branchwidth_upper(graph)
            lower = branchwidth_service.branchwidth_lower(graph, ceiling=upper)
    except (GraphDomainError, GraphFormatError, CapacityError) as e:
        raise _reject("branchwidth", graph, start, e)

    duration_ms = _record("branchwidth", graph, start, "exact" if lower == upper else "bounded")
    return BranchwidthResponse(
        lower=lower,
        upper=upper,
        exact=lower == upper,
        parents=bd.parent_list(),
        leaf_map=dict(bd.leaf_map),
        execution_time_ms=duration_ms,
    )
