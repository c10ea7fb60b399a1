"""Rotation systems on the sphere."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Set, Tuple

from ..core.exceptions import GraphDomainError
from .graph import MultiGraph

Dart = Tuple[int, int]  # (edge id, tail vertex)


class SideLabel(str, Enum):
    A = "A"
    B = "B"


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic order of incident edge ids around every vertex of ``graph``."""

    graph: MultiGraph
    rotation: Mapping[int, Tuple[int, ...]]

    def cyclic_order(self, vertex: int) -> Tuple[int, ...]:
        try:
            return self.rotation[vertex]
        except KeyError:
            raise GraphDomainError(f"vertex {vertex} has no rotation") from None

    def successor(self, vertex: int, edge_id: int) -> int:
        order = self.cyclic_order(vertex)
        return order[(order.index(edge_id) + 1) % len(order)]

    def predecessor(self, vertex: int, edge_id: int) -> int:
        order = self.cyclic_order(vertex)
        return order[(order.index(edge_id) - 1) % len(order)]

    def is_consistent(self) -> bool:
        """Every incident edge appears exactly once in its endpoint's cycle."""
        if set(self.rotation) != set(self.graph.vertices):
            return False
        for vertex in self.graph.vertices:
            order = self.rotation[vertex]
            if len(order) != len(set(order)):
                return False
            if set(order) != set(self.graph.incident_edges(vertex)):
                return False
        return True

    def faces(self) -> List[Tuple[Dart, ...]]:
        """Trace faces as dart cycles; an isolated vertex is its own face."""
        graph = self.graph
        seen: Set[Dart] = set()
        faces: List[Tuple[Dart, ...]] = []
        for edge_id in sorted(graph.edges):
            for tail in graph.endpoints(edge_id):
                if (edge_id, tail) in seen:
                    continue
                face: List[Dart] = []
                dart = (edge_id, tail)
                while dart not in seen:
                    seen.add(dart)
                    face.append(dart)
                    current, start = dart
                    head = graph.other_end(current, start)
                    dart = (self.predecessor(head, current), head)
                faces.append(tuple(face))
        return faces

    def face_count(self) -> int:
        isolated = sum(1 for vertex in self.graph.vertices if self.graph.degree(vertex) == 0)
        return len(self.faces()) + isolated

    def euler_characteristic(self) -> int:
        return self.graph.order - self.graph.size + self.face_count()

    def is_spherical(self) -> bool:
        """V - E + F = 2 for a connected graph."""
        return self.is_consistent() and self.euler_characteristic() == 2

    def as_dict(self) -> Dict[int, List[int]]:
        return {vertex: list(order) for vertex, order in sorted(self.rotation.items())}
