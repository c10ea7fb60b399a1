"""Named and random multigraph generators."""

import random
from typing import Optional

import networkx as nx

from ..core.exceptions import GraphDomainError
from ..models.graph import MultiGraph


def _from_nx(graph: nx.Graph) -> MultiGraph:
    return MultiGraph.from_networkx(nx.convert_node_labels_to_integers(graph, ordering="sorted"))


def complete_graph(n: int) -> MultiGraph:
    return _from_nx(nx.complete_graph(n))


def complete_bipartite(a: int, b: int) -> MultiGraph:
    return _from_nx(nx.complete_bipartite_graph(a, b))


def cycle_graph(n: int) -> MultiGraph:
    if n < 3:
        raise GraphDomainError("a cycle needs at least 3 vertices")
    return _from_nx(nx.cycle_graph(n))


def path_graph(n: int) -> MultiGraph:
    return _from_nx(nx.path_graph(n))


def star_graph(leaves: int) -> MultiGraph:
    """K_{1,leaves} with centre 0."""
    return _from_nx(nx.star_graph(leaves))


def wheel_graph(rim: int) -> MultiGraph:
    """Hub 0 joined to a cycle on ``rim`` vertices."""
    return _from_nx(nx.wheel_graph(rim + 1))


def petersen_graph() -> MultiGraph:
    return _from_nx(nx.petersen_graph())


def cube_graph() -> MultiGraph:
    return _from_nx(nx.hypercube_graph(3))


def octahedron_graph() -> MultiGraph:
    return _from_nx(nx.octahedral_graph())


def wagner_graph() -> MultiGraph:
    """V8: an 8-cycle with its four long diagonals."""
    return _from_nx(nx.circulant_graph(8, [1, 4]))


def parallel_edges(count: int) -> MultiGraph:
    """Two vertices joined by ``count`` parallel edges."""
    return MultiGraph.from_edge_list([(0, 1)] * count)


def two_k4_joined() -> MultiGraph:
    """Two copies of K4 joined by three independent edges."""
    pairs = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    pairs += [(u + 4, v + 4) for u, v in pairs]
    pairs += [(0, 4), (1, 5), (2, 6)]
    return MultiGraph.from_edge_list(pairs, range(8))


NAMED_GRAPHS = {
    "k4": lambda: complete_graph(4),
    "k5": lambda: complete_graph(5),
    "k33": lambda: complete_bipartite(3, 3),
    "petersen": petersen_graph,
    "cube": cube_graph,
    "octahedron": octahedron_graph,
    "v8": wagner_graph,
    "two-k4": two_k4_joined,
}


def named_graph(name: str) -> MultiGraph:
    try:
        return NAMED_GRAPHS[name.lower()]()
    except KeyError:
        raise GraphDomainError(f"unknown graph name {name!r}") from None


def random_multigraph(n: int, m: int, rng: Optional[random.Random] = None) -> MultiGraph:
    """``m`` edges with endpoints drawn uniformly among distinct pairs; repeats allowed."""
    rng = rng or random.Random(0)
    if n < 2 and m > 0:
        raise GraphDomainError("edges need at least two vertices")
    pairs = []
    for _ in range(m):
        u, v = rng.sample(range(n), 2)
        pairs.append((min(u, v), max(u, v)))
    return MultiGraph.from_edge_list(pairs, range(n))


def random_connected_multigraph(n: int, m: int, rng: Optional[random.Random] = None) -> MultiGraph:
    """Random spanning tree plus ``m - (n - 1)`` random extra edges."""
    rng = rng or random.Random(0)
    if m < n - 1:
        raise GraphDomainError(f"{m} edges cannot connect {n} vertices")
    pairs = []
    for vertex in range(1, n):
        parent = rng.randrange(vertex)
        pairs.append((parent, vertex))
    for _ in range(m - (n - 1)):
        u, v = rng.sample(range(n), 2)
        pairs.append((min(u, v), max(u, v)))
    rng.shuffle(pairs)
    return MultiGraph.from_edge_list(pairs, range(n))


def random_planar_graph(n: int, extra_edges: int, rng: Optional[random.Random] = None) -> MultiGraph:
    """Connected simple planar graph: random tree, then planarity-preserving chords."""
    rng = rng or random.Random(0)
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for vertex in range(1, n):
        graph.add_edge(rng.randrange(vertex), vertex)
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if not graph.has_edge(u, v)]
    rng.shuffle(candidates)
    added = 0
    for u, v in candidates:
        if added >= extra_edges:
            break
        graph.add_edge(u, v)
        planar, _ = nx.check_planarity(graph)
        if planar:
            added += 1
        else:
            graph.remove_edge(u, v)
    return MultiGraph.from_networkx(graph)


def with_doubled_edges(graph: MultiGraph, count: int, rng: Optional[random.Random] = None) -> MultiGraph:
    """Add a parallel copy of ``count`` randomly chosen edges."""
    rng = rng or random.Random(0)
    chosen = rng.sample(sorted(graph.edges), min(count, graph.size))
    for edge_id in chosen:
        u, v = graph.endpoints(edge_id)
        graph, _ = graph.add_edge(u, v)
    return graph

