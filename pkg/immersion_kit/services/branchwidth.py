"""Branch decompositions: widths, exact search, bounds and cylinders."""

import logging
from collections import Counter
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ..config import Settings, settings as default_settings
from ..core.exceptions import GraphDomainError
from ..core.guards import enforce_guard
from ..core.logging import analysis_logger
from ..models.branch import BranchDecomposition, Cylinder
from ..models.graph import MultiGraph
from .generators import complete_graph, cube_graph, octahedron_graph, wagner_graph
from .relations import RelationsService

logger = logging.getLogger(__name__)

# excluded minors for branch-width at most 3
WIDTH_THREE_OBSTRUCTIONS = (
    ("K5", complete_graph(5)),
    ("Q3", cube_graph()),
    ("octahedron", octahedron_graph()),
    ("V8", wagner_graph()),
)


def middle_set(graph: MultiGraph, edge_subset: Iterable[int]) -> frozenset:
    """Vertices incident to an edge of ``edge_subset`` and to an edge outside it."""
    inside: Counter = Counter()
    for edge_id in edge_subset:
        u, v = graph.endpoints(edge_id)
        inside[u] += 1
        inside[v] += 1
    return frozenset(v for v, count in inside.items() if count < graph.degree(v))


def _sweep_width(
    adjacency: Mapping[int, Sequence[int]],
    root: int,
    leaf_edges: Mapping[int, int],
    graph: MultiGraph,
    totals: Mapping[int, int],
) -> int:
    """Largest middle set over the tree edges, one bottom-up pass from ``root``.

    ``totals`` gives the number of counted edge ends at each vertex; a vertex
    is in the middle set of a tree edge when the subtree below holds some but
    not all of them.
    """
    parent = {root: None}
    order = [root]
    for node in order:
        for neighbour in adjacency[node]:
            if neighbour not in parent:
                parent[neighbour] = node
                order.append(neighbour)

    below: Dict[int, Counter] = {}
    width = 0
    for node in reversed(order):
        counts: Counter = Counter()
        if node in leaf_edges:
            u, v = graph.endpoints(leaf_edges[node])
            counts[u] += 1
            counts[v] += 1
        for neighbour in adjacency[node]:
            if parent.get(neighbour) == node:
                counts.update(below.pop(neighbour))
        below[node] = counts
        if parent[node] is not None:
            sigma = sum(1 for v, count in counts.items() if count < totals[v])
            width = max(width, sigma)
    return width


def decomposition_problems(graph: MultiGraph, bd: BranchDecomposition) -> List[str]:
    problems: List[str] = []
    if set(bd.leaf_map) != set(graph.edges):
        problems.append("leaf map does not cover exactly the graph edges")
        return problems
    if graph.size <= 1:
        if bd.node_count != graph.size or bd.tree_edges:
            problems.append("graphs with at most one edge take the trivial decomposition")
        return problems

    leaves = list(bd.leaf_map.values())
    if len(set(leaves)) != len(leaves):
        problems.append("two edges share a leaf")
    if any(not 0 <= node < bd.node_count for node in leaves):
        problems.append("leaf map points outside the tree")
    tree = nx.Graph()
    tree.add_nodes_from(range(bd.node_count))
    for a, b in bd.tree_edges:
        if not (0 <= a < bd.node_count and 0 <= b < bd.node_count):
            problems.append(f"tree edge ({a}, {b}) names an unknown node")
            return problems
        tree.add_edge(a, b)
    if len(bd.tree_edges) != bd.node_count - 1 or not nx.is_tree(tree):
        problems.append("tree edges do not form a tree")
        return problems
    leaf_nodes = set(leaves)
    for node in range(bd.node_count):
        expected = 1 if node in leaf_nodes else 3
        if tree.degree(node) != expected:
            kind = "leaf" if node in leaf_nodes else "internal node"
            problems.append(f"{kind} {node} has degree {tree.degree(node)}, expected {expected}")
    return problems


def width_of(graph: MultiGraph, bd: BranchDecomposition) -> int:
    """Width of ``bd`` over ``graph``; zero for graphs with at most one edge."""
    problems = decomposition_problems(graph, bd)
    if problems:
        raise GraphDomainError("malformed branch decomposition: " + "; ".join(problems))
    if graph.size <= 1:
        return 0
    leaf_edges = {node: edge_id for edge_id, node in bd.leaf_map.items()}
    totals = {v: graph.degree(v) for v in graph.vertices}
    return _sweep_width(bd.adjacency(), 0, leaf_edges, graph, totals)


def _leaf_bound(graph: MultiGraph) -> int:
    """Each leaf edge separates one edge from the rest: ends of degree >= 2 are in the middle."""
    if graph.size <= 1:
        return 0
    return max(
        sum(1 for v in graph.endpoints(edge_id) if graph.degree(v) >= 2) for edge_id in graph.edges
    )


def _two_leaf(graph: MultiGraph) -> BranchDecomposition:
    first, second = sorted(graph.edges)
    return BranchDecomposition(2, ((0, 1),), {first: 0, second: 1})


def make_cylinder(r: int, q: int) -> Cylinder:
    if r < 3 or q < 1:
        raise GraphDomainError(f"cylinder needs r >= 3 and q >= 1, got r={r}, q={q}")
    pairs = []
    for ring in range(q):
        for position in range(r):
            pairs.append((ring * r + position, ring * r + (position + 1) % r))
    for ring in range(q - 1):
        for position in range(r):
            pairs.append((ring * r + position, (ring + 1) * r + position))
    return Cylinder(r, q, MultiGraph.from_edge_list(pairs, range(r * q)))


def cylinder(r: int, q: int) -> MultiGraph:
    """Cartesian product of an r-cycle and a q-vertex path."""
    return make_cylinder(r, q).graph


class _Found(Exception):
    pass


class BranchwidthService:
    """Exact and heuristic branch-width."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or default_settings
        self.relations = RelationsService(self.settings)

    def branchwidth_lower(self, graph: MultiGraph, ceiling: Optional[int] = None) -> int:
        """Lower bound from leaf edges and the excluded minors of widths 2 and 3.

        Minor tests are skipped on hosts above the minor guard, and once the
        bound reaches ``ceiling``.
        """
        bound = _leaf_bound(graph)
        if ceiling is not None and bound >= ceiling:
            return bound
        simple = graph.simplify()
        if simple.order > self.settings.minor_max_host_vertices:
            logger.debug(f"lower bound limited to leaf bound on {simple.order} vertices")
            return bound
        if bound < 3 and self.relations.contains_minor(simple, complete_graph(4)) is not None:
            bound = 3
        if bound == 3 and (ceiling is None or ceiling > 3):
            for name, obstruction in WIDTH_THREE_OBSTRUCTIONS:
                if simple.size < obstruction.size or simple.order < obstruction.order:
                    continue
                if self.relations.contains_minor(simple, obstruction) is not None:
                    logger.debug(f"{name} minor forces branch-width at least 4")
                    bound = 4
                    break
        return bound

    def branchwidth_upper(self, graph: MultiGraph) -> Tuple[int, BranchDecomposition]:
        """Greedy merging of edge clusters, smallest merged middle set first."""
        edges = sorted(graph.edges)
        if len(edges) <= 1:
            return 0, BranchDecomposition.trivial(graph)
        if len(edges) == 2:
            bd = _two_leaf(graph)
            return width_of(graph, bd), bd

        degree = {v: graph.degree(v) for v in graph.vertices}
        clusters: List[Tuple[int, Counter]] = []
        tree_edges: List[Tuple[int, int]] = []
        leaf_map: Dict[int, int] = {}
        for node, edge_id in enumerate(edges):
            u, v = graph.endpoints(edge_id)
            clusters.append((node, Counter((u, v))))
            leaf_map[edge_id] = node
        next_node = len(edges)

        def boundary(counts: Counter) -> int:
            return sum(1 for v, count in counts.items() if count < degree[v])

        while len(clusters) > 3:
            best = None
            for i in range(len(clusters)):
                for j in range(i + 1, len(clusters)):
                    merged = clusters[i][1] + clusters[j][1]
                    shared = len(clusters[i][1].keys() & clusters[j][1].keys())
                    key = (boundary(merged), -shared, i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j, merged)
            _, i, j, merged = best
            node = next_node
            next_node += 1
            tree_edges.append((node, clusters[i][0]))
            tree_edges.append((node, clusters[j][0]))
            clusters = [c for k, c in enumerate(clusters) if k not in (i, j)] + [(node, merged)]

        centre = next_node
        for root, _ in clusters:
            tree_edges.append((centre, root))
        bd = BranchDecomposition(centre + 1, tuple(tree_edges), leaf_map)
        width = width_of(graph, bd)
        analysis_logger.log_branchwidth(graph.size, width, "greedy")
        return width, bd

    def branchwidth_exact(self, graph: MultiGraph, guard_override: bool = False) -> Tuple[int, BranchDecomposition]:
        """Minimum width over all ternary leaf-trees, by iterated leaf insertion.

        Edges are inserted in ascending id order; a partial tree's width over
        the inserted edges never exceeds its final width, so branches at or
        above the best known width are cut. The greedy decomposition seeds
        the bound and the search stops once the lower bound is met.
        """
        enforce_guard("branchwidth_exact_max_edges", self.settings.branchwidth_exact_max_edges,
                      graph.size, guard_override)
        edges = sorted(graph.edges)
        if len(edges) <= 2:
            width, bd = self.branchwidth_upper(graph)
            analysis_logger.log_branchwidth(graph.size, width, "exact")
            return width, bd

        upper, upper_bd = self.branchwidth_upper(graph)
        lower = self.branchwidth_lower(graph, ceiling=upper)
        best: List = [upper, upper_bd]
        if lower < upper:
            try:
                self._insert_leaves(graph, edges, lower, best)
            except _Found:
                pass
        analysis_logger.log_branchwidth(graph.size, best[0], "exact")
        return best[0], best[1]

    def _insert_leaves(self, graph: MultiGraph, edges: List[int], lower: int, best: List) -> None:
        adjacency: Dict[int, List[int]] = {0: [1, 2, 3], 1: [0], 2: [0], 3: [0]}
        leaf_edges: Dict[int, int] = {1: edges[0], 2: edges[1], 3: edges[2]}
        totals: Counter = Counter()
        for edge_id in edges[:3]:
            totals.update(graph.endpoints(edge_id))

        def tree_edges() -> List[Tuple[int, int]]:
            return sorted((a, b) for a in adjacency for b in adjacency[a] if a < b)

        def extend(index: int) -> None:
            if _sweep_width(adjacency, 0, leaf_edges, graph, totals) >= best[0]:
                return
            if index == len(edges):
                node_count = len(adjacency)
                leaf_map = {edge_id: node for node, edge_id in leaf_edges.items()}
                best[0] = _sweep_width(adjacency, 0, leaf_edges, graph, totals)
                best[1] = BranchDecomposition(node_count, tuple(tree_edges()), leaf_map)
                logger.debug(f"exact search improved width to {best[0]}")
                if best[0] <= lower:
                    raise _Found()
                return
            edge_id = edges[index]
            totals.update(graph.endpoints(edge_id))
            inner, leaf = len(adjacency), len(adjacency) + 1
            for a, b in tree_edges():
                adjacency[a][adjacency[a].index(b)] = inner
                adjacency[b][adjacency[b].index(a)] = inner
                adjacency[inner] = [a, b, leaf]
                adjacency[leaf] = [inner]
                leaf_edges[leaf] = edge_id
                extend(index + 1)
                del leaf_edges[leaf]
                del adjacency[leaf]
                del adjacency[inner]
                adjacency[a][adjacency[a].index(inner)] = b
                adjacency[b][adjacency[b].index(inner)] = a
            totals.subtract(graph.endpoints(edge_id))

        extend(3)
