"""Branch decompositions and cylinders."""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

from ..core.exceptions import GraphDomainError
from .graph import MultiGraph


@dataclass(frozen=True)
class BranchDecomposition:
    """Ternary tree on nodes ``0..node_count-1`` with graph edges mapped to leaves.

    ``leaf_map`` sends every graph edge id to a tree node of degree 1 (or to
    node 0 of the single-node tree when the graph has one edge).
    """

    node_count: int
    tree_edges: Tuple[Tuple[int, int], ...]
    leaf_map: Mapping[int, int]

    @classmethod
    def trivial(cls, graph: MultiGraph) -> "BranchDecomposition":
        edges = sorted(graph.edges)
        if not edges:
            return cls(0, (), {})
        if len(edges) == 1:
            return cls(1, (), {edges[0]: 0})
        raise GraphDomainError("trivial decomposition needs at most one edge")

    def adjacency(self) -> Dict[int, List[int]]:
        adjacency: Dict[int, List[int]] = {node: [] for node in range(self.node_count)}
        for a, b in self.tree_edges:
            adjacency[a].append(b)
            adjacency[b].append(a)
        return adjacency

    def parent_list(self) -> List[int]:
        """Parent of each node with node 0 as the root; the root's parent is -1."""
        parents = [-1] * self.node_count
        if not self.node_count:
            return parents
        adjacency = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            node = stack.pop()
            for neighbour in sorted(adjacency[node]):
                if neighbour not in seen:
                    seen.add(neighbour)
                    parents[neighbour] = node
                    stack.append(neighbour)
        return parents

    @classmethod
    def from_parent_list(cls, parents: List[int], leaf_map: Mapping[int, int]) -> "BranchDecomposition":
        tree_edges = tuple((parent, node) for node, parent in enumerate(parents) if parent >= 0)
        return cls(len(parents), tree_edges, dict(leaf_map))


@dataclass(frozen=True)
class Cylinder:
    """Cartesian product of an r-cycle and a q-vertex path.

    Vertex ``ring * r + position`` sits on ring ``ring`` at ``position``.
    """

    r: int
    q: int
    graph: MultiGraph

    def vertex(self, ring: int, position: int) -> int:
        return ring * self.r + (position % self.r)
