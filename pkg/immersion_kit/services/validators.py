"""Independent re-validation of containment models.

Validators recompute every property from the graphs and return a list of
problems; an empty list means the model is valid.
"""

from typing import List

import networkx as nx

from ..models.graph import MultiGraph
from ..models.immersion import ContainmentMode, ImmersionModel, MinorModel


def validate_immersion_model(
    host: MultiGraph, pattern: MultiGraph, model: ImmersionModel, mode: ContainmentMode = ContainmentMode.WEAK
) -> List[str]:
    problems: List[str] = []
    vertex_map = dict(model.vertex_map)
    if set(vertex_map) != set(pattern.vertices):
        problems.append("vertex map does not cover exactly the pattern vertices")
    if len(set(vertex_map.values())) != len(vertex_map):
        problems.append("vertex map is not injective")
    for h_vertex, g_vertex in sorted(vertex_map.items()):
        if not host.has_vertex(g_vertex):
            problems.append(f"pattern vertex {h_vertex} maps outside the host")
    if set(model.branch_paths) != set(pattern.edges):
        problems.append("branch paths do not cover exactly the pattern edges")
    if problems:
        return problems

    image = set(vertex_map.values())
    used_edges = {}
    used_interior = {}
    for h_edge in sorted(model.branch_paths):
        path = model.branch_paths[h_edge]
        if not path.is_valid_in(host):
            problems.append(f"path for pattern edge {h_edge} is not a path of the host")
            continue
        u, v = pattern.endpoints(h_edge)
        ends = {path.start, path.end}
        if ends != {vertex_map[u], vertex_map[v]} or len(path) == 0:
            problems.append(f"path for pattern edge {h_edge} has wrong endpoints")
        for edge_id in path.edges:
            if edge_id in used_edges:
                problems.append(f"host edge {edge_id} used by pattern edges {used_edges[edge_id]} and {h_edge}")
            used_edges[edge_id] = h_edge
        interior = set(path.interior)
        if mode in (ContainmentMode.STRONG, ContainmentMode.TOPOLOGICAL) and interior & image:
            problems.append(f"path for pattern edge {h_edge} passes through a branch vertex")
        if mode == ContainmentMode.TOPOLOGICAL:
            for vertex in sorted(interior):
                if vertex in used_interior:
                    problems.append(
                        f"interior vertex {vertex} shared by pattern edges {used_interior[vertex]} and {h_edge}"
                    )
                used_interior[vertex] = h_edge
    return problems


def validate_minor_model(host: MultiGraph, pattern: MultiGraph, model: MinorModel) -> List[str]:
    problems: List[str] = []
    if set(model.branch_sets) != set(pattern.vertices):
        problems.append("branch sets do not cover exactly the pattern vertices")
        return problems
    owner = {}
    simple_host = host.to_simple_networkx()
    for h_vertex, branch in sorted(model.branch_sets.items()):
        if not branch:
            problems.append(f"branch set of {h_vertex} is empty")
            continue
        if not set(branch) <= host.vertices:
            problems.append(f"branch set of {h_vertex} leaves the host")
            continue
        for vertex in branch:
            if vertex in owner:
                problems.append(f"host vertex {vertex} lies in two branch sets")
            owner[vertex] = h_vertex
        if not nx.is_connected(simple_host.subgraph(branch)):
            problems.append(f"branch set of {h_vertex} is not connected")
    if set(model.edge_assignment) != set(pattern.edges):
        problems.append("edge assignment does not cover exactly the pattern edges")
        return problems
    if len(set(model.edge_assignment.values())) != len(model.edge_assignment):
        problems.append("two pattern edges share a host edge")
    for h_edge, g_edge in sorted(model.edge_assignment.items()):
        if not host.has_edge(g_edge):
            problems.append(f"pattern edge {h_edge} assigned to unknown host edge {g_edge}")
            continue
        a, b = host.endpoints(g_edge)
        if {owner.get(a), owner.get(b)} != set(pattern.endpoints(h_edge)):
            problems.append(f"host edge {g_edge} does not join the branch sets of pattern edge {h_edge}")
    return problems


def validate_topological_model(host: MultiGraph, pattern: MultiGraph, model: ImmersionModel) -> List[str]:
    """Subdivision model: internally vertex-disjoint paths avoiding the branch vertices."""
    return validate_immersion_model(host, pattern, model, ContainmentMode.TOPOLOGICAL)
