"""Isomorphism testing and canonical forms for small multigraphs.

Canonical labellings and automorphism orbits come from nauty. A graph with
parallel edges is handed over as its edge subdivision, the subdivision
vertices forming the last colour cell.
"""

import logging
from typing import Dict, List, Mapping, Optional, Tuple

import pynauty
from networkx.algorithms.isomorphism import MultiGraphMatcher

from ..config import settings
from ..core.guards import enforce_guard
from ..models.graph import MultiGraph

logger = logging.getLogger(__name__)

CanonicalForm = Tuple

Adjacency = Dict[int, Dict[int, int]]

EMPTY_FORM: CanonicalForm = ((0, 0, True, ()), b"")


def multiplicity_table(graph: MultiGraph) -> Adjacency:
    table: Adjacency = {vertex: {} for vertex in graph.vertices}
    for u, v in graph.edges.values():
        table[u][v] = table[u].get(v, 0) + 1
        table[v][u] = table[v].get(u, 0) + 1
    return table


def is_isomorphic(first: MultiGraph, second: MultiGraph, guard_override: bool = False) -> bool:
    """Multiplicity-preserving isomorphism test."""
    enforce_guard("isomorphism_max_vertices", settings.isomorphism_max_vertices,
                  max(first.order, second.order), guard_override)
    if first.order != second.order or first.size != second.size:
        return False
    if first.degree_sequence() != second.degree_sequence():
        return False
    return MultiGraphMatcher(first.to_networkx(), second.to_networkx()).is_isomorphic()


def _twins(table: Adjacency, first: int, second: int) -> bool:
    for other in set(table[first]) | set(table[second]):
        if other in (first, second):
            continue
        if table[first].get(other, 0) != table[second].get(other, 0):
            return False
    return True


def twin_classes(graph: MultiGraph) -> List[List[int]]:
    """Classes of vertices with equal multiplicity to every other vertex.

    Any permutation inside a class is an automorphism.
    """
    table = multiplicity_table(graph)
    classes: List[List[int]] = []
    for vertex in sorted(table):
        for members in classes:
            if _twins(table, members[0], vertex):
                members.append(vertex)
                break
        else:
            classes.append([vertex])
    return classes


def to_nauty(
    graph: MultiGraph, colouring: Optional[Mapping[int, int]] = None
) -> Tuple[pynauty.Graph, List[int], Tuple]:
    """Return the nauty graph, the vertex at each nauty index, and the colour signature.

    Vertex cells are ordered by colour value. The signature carries what the
    nauty certificate alone does not: order, size, encoding and cell sizes.
    """
    vertices = sorted(graph.vertices)
    index = {vertex: position for position, vertex in enumerate(vertices)}
    colours = {vertex: (colouring or {}).get(vertex, 0) for vertex in vertices}
    values = sorted(set(colours.values()))
    cells = [{index[v] for v in vertices if colours[v] == value} for value in values]
    signature_cells = tuple((value, len(cell)) for value, cell in zip(values, cells))

    adjacency: Dict[int, List[int]] = {position: [] for position in range(len(vertices))}
    simple = graph.is_simple()
    order = len(vertices)
    if simple:
        for u, v in graph.edges.values():
            adjacency[index[u]].append(index[v])
    else:
        for edge_id in sorted(graph.edges):
            u, v = graph.edges[edge_id]
            adjacency[order] = [index[u], index[v]]
            order += 1
        cells.append(set(range(len(vertices), order)))

    nauty_graph = pynauty.Graph(order, directed=False, adjacency_dict=adjacency, vertex_coloring=cells)
    return nauty_graph, vertices, (len(vertices), graph.size, simple, signature_cells)


def canonical_labelling(
    graph: MultiGraph, colouring: Optional[Mapping[int, int]] = None
) -> Tuple[CanonicalForm, List[int]]:
    """Return the canonical form and the vertex order that realises it.

    Two graphs (with colourings) get equal forms iff they are isomorphic by a
    colour-preserving map.
    """
    if not graph.vertices:
        return EMPTY_FORM, []
    nauty_graph, vertices, signature = to_nauty(graph, colouring)
    labels = pynauty.canon_label(nauty_graph)
    order = [vertices[position] for position in labels if position < len(vertices)]
    return (signature, pynauty.certificate(nauty_graph)), order


def canonical_form(graph: MultiGraph, colouring: Optional[Mapping[int, int]] = None) -> CanonicalForm:
    if not graph.vertices:
        return EMPTY_FORM
    nauty_graph, _, signature = to_nauty(graph, colouring)
    return signature, pynauty.certificate(nauty_graph)


def automorphism_orbits(graph: MultiGraph, colouring: Optional[Mapping[int, int]] = None) -> Dict[int, int]:
    """Map every vertex to the smallest vertex of its automorphism orbit."""
    if not graph.vertices:
        return {}
    nauty_graph, vertices, _ = to_nauty(graph, colouring)
    orbits = pynauty.autgrp(nauty_graph)[3]
    smallest: Dict[int, int] = {}
    for position, vertex in enumerate(vertices):
        smallest.setdefault(orbits[position], vertex)
    return {vertex: smallest[orbits[position]] for position, vertex in enumerate(vertices)}


def canonical_graph(graph: MultiGraph) -> MultiGraph:
    """Relabel vertices to 0..n-1 in canonical order with edge ids in sorted order."""
    _, order = canonical_labelling(graph)
    position = {vertex: index for index, vertex in enumerate(order)}
    pairs = sorted(tuple(sorted((position[u], position[v]))) for u, v in graph.edges.values())
    return MultiGraph.from_edge_list(pairs, range(len(order)))
