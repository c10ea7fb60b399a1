"""Planarity testing and spherical rotation systems."""

import logging
from typing import Dict, Optional, Tuple

import networkx as nx

from ..config import Settings, settings as default_settings
from ..core.exceptions import GraphDomainError, InternalInvariantError
from ..models.embedding import RotationSystem, SideLabel
from ..models.graph import MultiGraph

logger = logging.getLogger(__name__)


class EmbeddingService:
    """Planarity and rotation-system queries."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or default_settings

    def is_planar(self, graph: MultiGraph) -> bool:
        """Planarity of the underlying simple graph; parallel edges never matter."""
        planar, _ = nx.check_planarity(graph.to_simple_networkx())
        return planar

    def embed_planar(self, graph: MultiGraph) -> Optional[RotationSystem]:
        """Rotation system of a connected planar multigraph, ``None`` if non-planar.

        Parallel copies are inserted side by side: ascending ids at the
        smaller endpoint and descending ids at the larger one.
        """
        if graph.order == 0:
            return RotationSystem(graph, {})
        simple = graph.to_simple_networkx()
        if graph.order > 1 and not nx.is_connected(simple):
            raise GraphDomainError("embed_planar needs a connected graph")
        planar, embedding = nx.check_planarity(simple)
        if not planar:
            return None

        rotation: Dict[int, Tuple[int, ...]] = {}
        for vertex in sorted(graph.vertices):
            order = []
            neighbours = list(embedding.neighbors_cw_order(vertex)) if graph.degree(vertex) else []
            for neighbour in neighbours:
                copies = sorted(graph.edges_between(vertex, neighbour), reverse=vertex > neighbour)
                order.extend(copies)
            rotation[vertex] = tuple(order)

        rs = RotationSystem(graph, rotation)
        if not rs.is_spherical():
            logger.error(f"embedding fails the Euler check: chi = {rs.euler_characteristic()}")
            raise InternalInvariantError("planar embedding fails the Euler check")
        return rs

    def local_sides(self, rs: RotationSystem, x: int, p1_in: int, p1_out: int, query: int) -> SideLabel:
        """Which arc of the cyclic order at ``x`` cut by ``p1_in`` and ``p1_out`` holds ``query``.

        Side A is the arc holding the smallest other edge id at ``x``, so the
        label does not depend on the order of ``p1_in`` and ``p1_out``.
        """
        order = rs.cyclic_order(x)
        for edge_id in (p1_in, p1_out, query):
            if edge_id not in order:
                raise GraphDomainError(f"edge {edge_id} is not incident to vertex {x}")
        if p1_in == p1_out:
            raise GraphDomainError("path edges at the vertex must differ")
        if query in (p1_in, p1_out):
            raise GraphDomainError(f"query edge {query} lies on the path")

        first, second = sorted((order.index(p1_in), order.index(p1_out)))
        inner = set(order[first + 1:second])
        others = [edge_id for edge_id in order if edge_id not in (p1_in, p1_out)]
        anchor_inner = min(others) in inner
        return SideLabel.A if (query in inner) == anchor_inner else SideLabel.B
