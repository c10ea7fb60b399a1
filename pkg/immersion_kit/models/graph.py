"""Loopless multigraph and path value types.

Graphs are persistent values: every edit returns a new ``MultiGraph`` and
leaves its input untouched. Vertex and edge ids are opaque integers. Fresh
ids come from per-lineage monotone counters, so ids removed by an edit are
never handed out again by a later edit of the same lineage.
"""

from collections import Counter
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ..core.exceptions import GraphDomainError

Endpoints = Tuple[int, int]


def _pair(u: int, v: int) -> Endpoints:
    return (u, v) if u <= v else (v, u)


class MultiGraph:
    """Finite undirected loopless multigraph with stable vertex and edge ids."""

    __slots__ = (
        "_vertices",
        "_edges",
        "_incidence",
        "next_vertex_id",
        "next_edge_id",
        "provenance",
    )

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Optional[Mapping[int, Endpoints]] = None,
        next_vertex_id: Optional[int] = None,
        next_edge_id: Optional[int] = None,
        provenance: Tuple[str, ...] = (),
    ):
        vertex_set = frozenset(vertices)
        edge_map: Dict[int, Endpoints] = {}
        for edge_id, (u, v) in sorted((edges or {}).items()):
            if u == v:
                raise GraphDomainError(f"edge {edge_id} is a loop at vertex {u}")
            if u not in vertex_set or v not in vertex_set:
                raise GraphDomainError(f"edge {edge_id} has an endpoint outside the vertex set")
            edge_map[edge_id] = _pair(u, v)

        incidence: Dict[int, List[int]] = {vertex: [] for vertex in vertex_set}
        for edge_id, (u, v) in edge_map.items():
            incidence[u].append(edge_id)
            incidence[v].append(edge_id)

        self._vertices: FrozenSet[int] = vertex_set
        self._edges: Mapping[int, Endpoints] = MappingProxyType(edge_map)
        self._incidence: Mapping[int, Tuple[int, ...]] = MappingProxyType(
            {vertex: tuple(ids) for vertex, ids in incidence.items()}
        )
        max_vertex = max(vertex_set, default=-1)
        max_edge = max(edge_map, default=-1)
        self.next_vertex_id = max(max_vertex + 1, next_vertex_id or 0)
        self.next_edge_id = max(max_edge + 1, next_edge_id or 0)
        self.provenance = tuple(provenance)

    def __reduce__(self):
        return (
            type(self),
            (self._vertices, dict(self._edges), self.next_vertex_id, self.next_edge_id, self.provenance),
        )

    # construction helpers

    @classmethod
    def from_edge_list(cls, pairs: Iterable[Endpoints], vertices: Optional[Iterable[int]] = None) -> "MultiGraph":
        """Build a graph whose edge ids are the positions in ``pairs``."""
        pairs = list(pairs)
        vertex_set = set(vertices or ())
        for u, v in pairs:
            vertex_set.update((u, v))
        return cls(vertex_set, {index: pair for index, pair in enumerate(pairs)})

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "MultiGraph":
        """Convert a networkx graph with integer nodes; parallel edges are kept."""
        pairs = [(u, v) for u, v in graph.edges() if u != v]
        return cls.from_edge_list(sorted(_pair(u, v) for u, v in pairs), graph.nodes())

    def to_networkx(self) -> nx.MultiGraph:
        """Convert to a networkx MultiGraph keyed by edge id."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(sorted(self._vertices))
        for edge_id, (u, v) in self._edges.items():
            graph.add_edge(u, v, key=edge_id)
        return graph

    def to_simple_networkx(self) -> nx.Graph:
        """Underlying simple graph as a networkx Graph."""
        graph = nx.Graph()
        graph.add_nodes_from(sorted(self._vertices))
        graph.add_edges_from(self._edges.values())
        return graph

    def _derive(
        self,
        vertices: Iterable[int],
        edges: Mapping[int, Endpoints],
        note: Optional[str] = None,
        next_vertex_id: Optional[int] = None,
        next_edge_id: Optional[int] = None,
    ) -> "MultiGraph":
        provenance = self.provenance + ((note,) if note else ())
        return MultiGraph(
            vertices,
            edges,
            next_vertex_id=max(self.next_vertex_id, next_vertex_id or 0),
            next_edge_id=max(self.next_edge_id, next_edge_id or 0),
            provenance=provenance,
        )

    # read access

    @property
    def vertices(self) -> FrozenSet[int]:
        return self._vertices

    @property
    def edges(self) -> Mapping[int, Endpoints]:
        return self._edges

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def size(self) -> int:
        return len(self._edges)

    def has_vertex(self, vertex: int) -> bool:
        return vertex in self._vertices

    def has_edge(self, edge_id: int) -> bool:
        return edge_id in self._edges

    def endpoints(self, edge_id: int) -> Endpoints:
        try:
            return self._edges[edge_id]
        except KeyError:
            raise GraphDomainError(f"unknown edge id {edge_id}") from None

    def other_end(self, edge_id: int, vertex: int) -> int:
        u, v = self.endpoints(edge_id)
        if vertex == u:
            return v
        if vertex == v:
            return u
        raise GraphDomainError(f"edge {edge_id} is not incident to vertex {vertex}")

    def incident_edges(self, vertex: int) -> Tuple[int, ...]:
        """E_G(v): ids of the edges incident to ``vertex``."""
        try:
            return self._incidence[vertex]
        except KeyError:
            raise GraphDomainError(f"unknown vertex id {vertex}") from None

    def degree(self, vertex: int) -> int:
        return len(self.incident_edges(vertex))

    def neighbors(self, vertex: int) -> FrozenSet[int]:
        """N_G(v) as a vertex set, so ``len(neighbors(v)) <= degree(v)``."""
        return frozenset(self.other_end(edge_id, vertex) for edge_id in self.incident_edges(vertex))

    def edges_between(self, u: int, v: int) -> Tuple[int, ...]:
        return tuple(edge_id for edge_id in self.incident_edges(u) if self.other_end(edge_id, u) == v)

    def multiplicity(self, u: int, v: int) -> int:
        return len(self.edges_between(u, v))

    def degree_sequence(self) -> Tuple[int, ...]:
        return tuple(sorted((self.degree(v) for v in self._vertices), reverse=True))

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in self._vertices), default=0)

    @property
    def min_degree(self) -> int:
        return min((self.degree(v) for v in self._vertices), default=0)

    def is_subcubic(self) -> bool:
        return self.max_degree <= 3

    def is_simple(self) -> bool:
        return len(set(self._edges.values())) == len(self._edges)

    def endpoint_multiset(self) -> Counter:
        return Counter(self._edges.values())

    # equality

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and dict(self._edges) == dict(other._edges)

    def __hash__(self) -> int:
        return hash((self._vertices, frozenset(self._edges.items())))

    def same_edge_multiset(self, other: "MultiGraph") -> bool:
        """Same vertex ids and the same endpoint multiset, ignoring edge ids."""
        return self._vertices == other._vertices and self.endpoint_multiset() == other.endpoint_multiset()

    def __repr__(self) -> str:
        return f"MultiGraph(order={self.order}, size={self.size})"

    # edits

    def add_vertex(self, vertex: Optional[int] = None) -> Tuple["MultiGraph", int]:
        vertex = self.next_vertex_id if vertex is None else vertex
        if vertex in self._vertices:
            raise GraphDomainError(f"vertex {vertex} already exists")
        return self._derive(self._vertices | {vertex}, self._edges, next_vertex_id=vertex + 1), vertex

    def add_edge(self, u: int, v: int, edge_id: Optional[int] = None) -> Tuple["MultiGraph", int]:
        edge_id = self.next_edge_id if edge_id is None else edge_id
        if edge_id in self._edges:
            raise GraphDomainError(f"edge id {edge_id} already exists")
        for vertex in (u, v):
            if vertex not in self._vertices:
                raise GraphDomainError(f"unknown vertex id {vertex}")
        if u == v:
            raise GraphDomainError(f"edge {u}-{v} would be a loop")
        edges = dict(self._edges)
        edges[edge_id] = _pair(u, v)
        return self._derive(self._vertices, edges, next_edge_id=edge_id + 1), edge_id

    def delete(self, vertices: Iterable[int] = (), edges: Iterable[int] = ()) -> "MultiGraph":
        """G minus the given vertices (with their incident edges) and edges."""
        vertices = set(vertices)
        edges = set(edges)
        for vertex in sorted(vertices):
            if vertex not in self._vertices:
                raise GraphDomainError(f"unknown vertex id {vertex}")
        for edge_id in sorted(edges):
            if edge_id not in self._edges:
                raise GraphDomainError(f"unknown edge id {edge_id}")
        kept = {
            edge_id: pair
            for edge_id, pair in self._edges.items()
            if edge_id not in edges and pair[0] not in vertices and pair[1] not in vertices
        }
        return self._derive(self._vertices - vertices, kept)

    def induced_subgraph(self, vertices: Iterable[int]) -> "MultiGraph":
        vertices = set(vertices)
        unknown = vertices - self._vertices
        if unknown:
            raise GraphDomainError(f"unknown vertex id {min(unknown)}")
        return self.delete(vertices=self._vertices - vertices)

    def edge_subgraph(self, edges: Iterable[int], keep_all_vertices: bool = True) -> "MultiGraph":
        edges = set(edges)
        for edge_id in edges:
            self.endpoints(edge_id)
        kept = {edge_id: self._edges[edge_id] for edge_id in edges}
        if keep_all_vertices:
            vertices = self._vertices
        else:
            vertices = {vertex for pair in kept.values() for vertex in pair}
        return self._derive(vertices, kept)

    def contract(self, edge_id: int) -> "MultiGraph":
        """Merge the endpoints of ``edge_id`` into a fresh vertex; loops vanish."""
        x, y = self.endpoints(edge_id)
        merged = self.next_vertex_id
        edges: Dict[int, Endpoints] = {}
        for other_id, (u, v) in self._edges.items():
            u = merged if u in (x, y) else u
            v = merged if v in (x, y) else v
            if u != v:
                edges[other_id] = (u, v)
        vertices = (self._vertices - {x, y}) | {merged}
        return self._derive(vertices, edges, note=f"contract {edge_id} {x} {y} -> {merged}",
                            next_vertex_id=merged + 1)

    def subdivide_all(self) -> "MultiGraph":
        """Replace every edge {x, y} by a fresh vertex w and edges {x, w}, {w, y}."""
        vertices = set(self._vertices)
        edges: Dict[int, Endpoints] = {}
        next_vertex = self.next_vertex_id
        next_edge = self.next_edge_id
        for edge_id in sorted(self._edges):
            x, y = self._edges[edge_id]
            middle = next_vertex
            next_vertex += 1
            vertices.add(middle)
            edges[edge_id] = (x, middle)
            edges[next_edge] = (middle, y)
            next_edge += 1
        return self._derive(vertices, edges, note="subdivide_all",
                            next_vertex_id=next_vertex, next_edge_id=next_edge)

    def lift(self, first: int, second: int) -> Tuple["MultiGraph", int]:
        """Lift edges {x, y} and {x, z} to a fresh edge {y, z}."""
        if first == second:
            raise GraphDomainError("cannot lift an edge with itself")
        shared = set(self.endpoints(first)) & set(self.endpoints(second))
        if not shared:
            raise GraphDomainError(f"edges {first} and {second} are not adjacent")
        if len(shared) == 2:
            raise GraphDomainError(f"lifting parallel edges {first} and {second} would create a loop")
        (x,) = shared
        y = self.other_end(first, x)
        z = self.other_end(second, x)
        new_id = self.next_edge_id
        edges = {edge_id: pair for edge_id, pair in self._edges.items() if edge_id not in (first, second)}
        edges[new_id] = _pair(y, z)
        lifted = self._derive(self._vertices, edges, note=f"lift {first} {second} via {x} -> {new_id}",
                              next_edge_id=new_id + 1)
        return lifted, new_id

    def simplify(self) -> "MultiGraph":
        """Keep the smallest edge id of every parallel class."""
        kept: Dict[Endpoints, int] = {}
        for edge_id in sorted(self._edges):
            kept.setdefault(self._edges[edge_id], edge_id)
        return self._derive(self._vertices, {edge_id: pair for pair, edge_id in kept.items()})

    def relabeled(self, vertex_map: Mapping[int, int], edge_map: Optional[Mapping[int, int]] = None) -> "MultiGraph":
        """Rename vertices (and optionally edges); unmapped ids keep their value."""
        edge_map = edge_map or {}
        vertices = {vertex_map.get(vertex, vertex) for vertex in self._vertices}
        if len(vertices) != len(self._vertices):
            raise GraphDomainError("vertex relabeling is not injective")
        edges = {
            edge_map.get(edge_id, edge_id): (vertex_map.get(u, u), vertex_map.get(v, v))
            for edge_id, (u, v) in self._edges.items()
        }
        if len(edges) != len(self._edges):
            raise GraphDomainError("edge relabeling is not injective")
        return MultiGraph(vertices, edges)

    def disjoint_union(self, other: "MultiGraph") -> "MultiGraph":
        if self._vertices & other._vertices or set(self._edges) & set(other._edges):
            raise GraphDomainError("graphs share vertex or edge ids")
        edges = dict(self._edges)
        edges.update(other._edges)
        return MultiGraph(self._vertices | other._vertices, edges)


@dataclass(frozen=True)
class Path:
    """Alternating vertex/edge sequence; ``vertices`` has one more entry than ``edges``.

    The default path is vertex-simple. ``trail=True`` permits repeated
    vertices but never repeated edges.
    """

    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]
    trail: bool = False

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise GraphDomainError("a path needs exactly one more vertex than edges")
        if len(set(self.edges)) != len(self.edges):
            raise GraphDomainError("a path may not repeat an edge")
        if not self.trail and len(set(self.vertices)) != len(self.vertices):
            raise GraphDomainError("a path may not repeat a vertex")

    @classmethod
    def trivial(cls, vertex: int) -> "Path":
        return cls((vertex,), ())

    @classmethod
    def from_edges(cls, graph: MultiGraph, start: int, edges: Sequence[int], trail: bool = False) -> "Path":
        """Walk ``edges`` from ``start`` in ``graph``."""
        vertices = [start]
        for edge_id in edges:
            vertices.append(graph.other_end(edge_id, vertices[-1]))
        return cls(tuple(vertices), tuple(edges), trail)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def edge_set(self) -> FrozenSet[int]:
        return frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def position(self, vertex: int) -> int:
        try:
            return self.vertices.index(vertex)
        except ValueError:
            raise GraphDomainError(f"vertex {vertex} is not on the path") from None

    def subpath(self, start: int, end: int) -> "Path":
        """P[start, end] for vertices with ``start`` not after ``end``."""
        i, j = self.position(start), self.position(end)
        if i > j:
            raise GraphDomainError(f"vertex {start} comes after {end} on the path")
        return Path(self.vertices[i:j + 1], self.edges[i:j], self.trail)

    def concat(self, other: "Path") -> "Path":
        if self.end != other.start:
            raise GraphDomainError("paths do not meet")
        return Path(self.vertices + other.vertices[1:], self.edges + other.edges, self.trail or other.trail)

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.vertices)), tuple(reversed(self.edges)), self.trail)

    def edges_at(self, vertex: int) -> Tuple[int, int]:
        """Incoming and outgoing edge at an interior vertex."""
        i = self.position(vertex)
        if i == 0 or i == len(self.vertices) - 1:
            raise GraphDomainError(f"vertex {vertex} is an endpoint of the path")
        return self.edges[i - 1], self.edges[i]

    def is_valid_in(self, graph: MultiGraph) -> bool:
        for index, edge_id in enumerate(self.edges):
            if not graph.has_edge(edge_id):
                return False
            if set(graph.endpoints(edge_id)) != {self.vertices[index], self.vertices[index + 1]}:
                return False
        return all(graph.has_vertex(vertex) for vertex in self.vertices)
