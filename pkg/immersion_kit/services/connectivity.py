"""Components, edge cuts, F-splits, edge sums and Menger fans."""

import logging
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from ..config import Settings, settings as default_settings
from ..core.exceptions import GraphDomainError, InternalInvariantError
from ..core.logging import analysis_logger
from ..models.cuts import EdgeCut, SplitRecord
from ..models.graph import MultiGraph, Path

logger = logging.getLogger(__name__)

_SINK = ("sink",)


def _flow_network(graph: MultiGraph) -> nx.DiGraph:
    """Both arc directions per vertex pair, capacity = multiplicity."""
    network = nx.DiGraph()
    network.add_nodes_from(sorted(graph.vertices))
    for (u, v), count in sorted(graph.endpoint_multiset().items()):
        network.add_edge(u, v, capacity=count)
        network.add_edge(v, u, capacity=count)
    return network


def _vertex_components(graph: MultiGraph) -> List[FrozenSet[int]]:
    parts = [frozenset(part) for part in nx.connected_components(graph.to_simple_networkx())]
    return sorted(parts, key=min)


def multigraph_bridges(graph: MultiGraph) -> List[int]:
    """Edge ids whose removal disconnects their component."""
    bridges = []
    for u, v in nx.bridges(graph.to_simple_networkx()):
        between = graph.edges_between(u, v)
        if len(between) == 1:
            bridges.append(between[0])
    return sorted(bridges)


class ConnectivityService:
    """Edge-connectivity toolkit over immutable multigraphs."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or default_settings

    def components(self, graph: MultiGraph) -> List[MultiGraph]:
        """Connected components ordered by smallest vertex id; ids preserved."""
        return [graph.induced_subgraph(part) for part in _vertex_components(graph)]

    def is_connected(self, graph: MultiGraph) -> bool:
        return len(_vertex_components(graph)) <= 1

    def min_edge_cut_between(self, graph: MultiGraph, s: int, t: int) -> Tuple[int, FrozenSet[int]]:
        """Minimum s-t edge cut counting parallel edges separately."""
        for vertex in (s, t):
            if not graph.has_vertex(vertex):
                raise GraphDomainError(f"unknown vertex id {vertex}")
        if s == t:
            raise GraphDomainError("source and sink coincide")
        if not nx.has_path(graph.to_simple_networkx(), s, t):
            raise GraphDomainError(f"vertices {s} and {t} lie in different components")

        value, (source_side, _) = nx.minimum_cut(_flow_network(graph), s, t)
        cut = frozenset(
            edge_id
            for edge_id, (u, v) in graph.edges.items()
            if (u in source_side) != (v in source_side)
        )
        if len(cut) != value:
            raise InternalInvariantError(f"cut of size {len(cut)} disagrees with flow value {value}")
        return int(value), cut

    def describe_cut(self, graph: MultiGraph, edges: Iterable[int]) -> EdgeCut:
        """Recompute sides, minimality and internality of ``edges`` from scratch."""
        edges = tuple(sorted(set(edges)))
        if not edges:
            raise GraphDomainError("an edge cut needs at least one edge")
        for edge_id in edges:
            graph.endpoints(edge_id)

        owner = next(part for part in _vertex_components(graph) if graph.endpoints(edges[0])[0] in part)
        for edge_id in edges:
            if graph.endpoints(edge_id)[0] not in owner:
                raise GraphDomainError("cut edges lie in different components")

        remainder = graph.induced_subgraph(owner).delete(edges=edges)
        parts = _vertex_components(remainder)
        side_a = parts[0]
        side_b = frozenset(owner - side_a)
        crossing = all(
            (graph.endpoints(edge_id)[0] in side_a) != (graph.endpoints(edge_id)[1] in side_a)
            for edge_id in edges
        )
        minimal = len(parts) == 2 and crossing
        internal = minimal and len(side_a) >= 2 and len(side_b) >= 2
        return EdgeCut(edges, side_a, side_b, minimal, internal)

    def _bonds_of_size(self, graph: MultiGraph, size: int) -> List[Tuple[int, ...]]:
        """All minimal cuts with exactly ``size`` edges, sorted lexicographically."""
        found: Set[Tuple[int, ...]] = set()
        ordered = sorted(graph.edges)
        for removed in combinations(ordered, size - 1):
            rest = graph.delete(edges=removed)
            if removed and not self.is_connected(rest):
                continue
            for bridge in multigraph_bridges(rest):
                if removed and bridge < removed[-1]:
                    continue
                candidate = tuple(sorted(removed + (bridge,)))
                if candidate not in found and self.describe_cut(graph, candidate).minimal:
                    found.add(candidate)
        return sorted(found)

    def find_internal_cut(self, graph: MultiGraph, max_size: int = 3) -> Optional[EdgeCut]:
        """Smallest internal cut of size at most ``max_size``; ties by sorted edge ids."""
        if not 1 <= max_size <= 3:
            raise GraphDomainError("max_size must lie in [1, 3]")
        if not self.is_connected(graph):
            raise GraphDomainError("find_internal_cut needs a connected graph")
        if graph.order < 4:
            return None
        for size in range(1, max_size + 1):
            for candidate in self._bonds_of_size(graph, size):
                cut = self.describe_cut(graph, candidate)
                if cut.internal:
                    analysis_logger.log_cut_found(cut.size, list(cut.edges),
                                                  (len(cut.side_a), len(cut.side_b)))
                    return cut
        return None

    def split(self, graph: MultiGraph, cut: EdgeCut, next_vertex_id: Optional[int] = None) -> SplitRecord:
        """F-split of the component holding ``cut``; stubs keep their edge ids."""
        checked = self.describe_cut(graph, cut.edges)
        if not checked.minimal:
            raise GraphDomainError(f"cut {list(cut.edges)} is not minimal")
        if not checked.internal:
            raise GraphDomainError(f"cut {list(cut.edges)} is not internal")

        first = graph.next_vertex_id if next_vertex_id is None else next_vertex_id
        if first < graph.next_vertex_id:
            raise GraphDomainError(f"vertex id {first} is not fresh")
        new_a, new_b = first, first + 1
        cut_edges = set(checked.edges)

        def piece(side: FrozenSet[int], stub_vertex: int) -> MultiGraph:
            edges: Dict[int, Tuple[int, int]] = {}
            for edge_id, (u, v) in graph.edges.items():
                if edge_id in cut_edges:
                    inside = u if u in side else v
                    edges[edge_id] = (inside, stub_vertex)
                elif u in side and v in side:
                    edges[edge_id] = (u, v)
            return MultiGraph(
                side | {stub_vertex},
                edges,
                next_vertex_id=new_b + 1,
                next_edge_id=graph.next_edge_id,
                provenance=graph.provenance + (f"split {sorted(cut_edges)} stub {stub_vertex}",),
            )

        record = SplitRecord(
            cut=checked,
            new_vertex_a=new_a,
            new_vertex_b=new_b,
            pairing=tuple((edge_id, edge_id) for edge_id in checked.edges),
            component_a=piece(checked.side_a, new_a),
            component_b=piece(checked.side_b, new_b),
        )
        analysis_logger.log_split(list(checked.edges), (new_a, new_b))
        return record

    def edge_sum(
        self,
        first: MultiGraph,
        first_vertex: int,
        second: MultiGraph,
        second_vertex: int,
        sigma: Mapping[int, int],
    ) -> MultiGraph:
        """k-edge-sum; the lifted edge for ``(e, sigma[e])`` keeps the id ``e``.

        Vertex and edge ids of ``second`` are renamed only when they clash
        with ids of ``first``.
        """
        for graph, vertex in ((first, first_vertex), (second, second_vertex)):
            if not graph.has_vertex(vertex):
                raise GraphDomainError(f"unknown vertex id {vertex}")
        k = len(sigma)
        if first.degree(first_vertex) != k or second.degree(second_vertex) != k:
            raise GraphDomainError(
                f"degree mismatch: {first.degree(first_vertex)} and {second.degree(second_vertex)} vs |sigma| = {k}"
            )
        if set(sigma) != set(first.incident_edges(first_vertex)):
            raise GraphDomainError("sigma keys are not the stubs at the first vertex")
        if set(sigma.values()) != set(second.incident_edges(second_vertex)) or len(set(sigma.values())) != k:
            raise GraphDomainError("sigma is not a bijection onto the stubs at the second vertex")

        kept_first = first.vertices - {first_vertex}
        kept_second = second.vertices - {second_vertex}
        next_vertex = max(first.next_vertex_id, second.next_vertex_id)
        vertex_map: Dict[int, int] = {}
        for vertex in sorted(kept_second):
            if vertex in kept_first:
                vertex_map[vertex] = next_vertex
                next_vertex += 1
            else:
                vertex_map[vertex] = vertex

        second_stubs = set(second.incident_edges(second_vertex))
        next_edge = max(first.next_edge_id, second.next_edge_id)
        edges: Dict[int, Tuple[int, int]] = {}
        for edge_id, pair in first.edges.items():
            if edge_id not in sigma:
                edges[edge_id] = pair
        for edge_id in sorted(second.edges):
            if edge_id in second_stubs:
                continue
            u, v = second.endpoints(edge_id)
            new_id = edge_id
            if edge_id in first.edges:
                new_id = next_edge
                next_edge += 1
            edges[new_id] = (vertex_map[u], vertex_map[v])
        for first_stub, second_stub in sorted(sigma.items()):
            x = first.other_end(first_stub, first_vertex)
            y = vertex_map[second.other_end(second_stub, second_vertex)]
            edges[first_stub] = (x, y)

        return MultiGraph(
            kept_first | set(vertex_map.values()),
            edges,
            next_vertex_id=next_vertex,
            next_edge_id=next_edge,
            provenance=first.provenance,
        )

    def menger_fan(self, graph: MultiGraph, root: int, targets: Sequence[int]) -> Optional[List[Path]]:
        """Edge-disjoint paths from ``root``, the j-th ending at ``targets[j]``.

        Returns ``None`` when no such family exists.
        """
        targets = list(targets)
        for vertex in [root] + targets:
            if not graph.has_vertex(vertex):
                raise GraphDomainError(f"unknown vertex id {vertex}")
        if len(set(targets)) != len(targets):
            raise GraphDomainError("targets must be distinct")
        if root in targets:
            raise GraphDomainError(f"root {root} is also a target")
        if graph.degree(root) < len(targets):
            raise GraphDomainError(
                f"deg({root}) = {graph.degree(root)} is smaller than {len(targets)} targets"
            )
        if not targets:
            return []

        network = _flow_network(graph)
        for target in targets:
            network.add_edge(target, _SINK, capacity=1)
        value, flow = nx.maximum_flow(network, root, _SINK)
        if value < len(targets):
            logger.debug(f"fan from {root} carries only {value} of {len(targets)} units")
            return None

        net: Dict[int, Dict[object, int]] = {}
        for u, row in flow.items():
            for w, amount in row.items():
                back = flow.get(w, {}).get(u, 0)
                if amount > back:
                    net.setdefault(u, {})[w] = amount - back

        routes: Dict[int, List[int]] = {}
        for _ in targets:
            walk = [root]
            while True:
                current = walk[-1]
                if current != root and net.get(current, {}).get(_SINK, 0) > 0:
                    net[current][_SINK] -= 1
                    break
                step = min(w for w, amount in net.get(current, {}).items() if amount > 0 and w != _SINK)
                if step in walk:
                    start = walk.index(step)
                    cycle = walk[start:] + [step]
                    for a, b in zip(cycle, cycle[1:]):
                        net[a][b] -= 1
                    del walk[start + 1:]
                    continue
                walk.append(step)
            for a, b in zip(walk, walk[1:]):
                net[a][b] -= 1
            routes[walk[-1]] = walk

        unused: Dict[Tuple[int, int], List[int]] = {}
        paths: List[Path] = []
        for target in targets:
            walk = routes[target]
            edge_ids = []
            for a, b in zip(walk, walk[1:]):
                key = (min(a, b), max(a, b))
                if key not in unused:
                    unused[key] = sorted(graph.edges_between(a, b), reverse=True)
                edge_ids.append(unused[key].pop())
            paths.append(Path(tuple(walk), tuple(edge_ids)))
        return paths
