"""Tests for isomorphism testing and canonical forms."""

import random

import pytest

from immersion_kit.core.exceptions import CapacityError
from immersion_kit.models.graph import MultiGraph
from immersion_kit.services.generators import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    parallel_edges,
    path_graph,
    petersen_graph,
    random_connected_multigraph,
    star_graph,
)
from immersion_kit.services.isomorphism import (
    automorphism_orbits,
    canonical_form,
    canonical_graph,
    canonical_labelling,
    is_isomorphic,
    twin_classes,
)


def shuffled(graph: MultiGraph, rng: random.Random) -> MultiGraph:
    vertices = sorted(graph.vertices)
    images = list(vertices)
    rng.shuffle(images)
    return graph.relabeled(dict(zip(vertices, [v + 100 for v in images])))


class TestIsomorphism:
    """Test cases for multiplicity-preserving isomorphism."""

    def test_relabelled_graph_is_isomorphic(self):
        """Test a relabelled Petersen graph is recognised."""
        petersen = petersen_graph()
        assert is_isomorphic(petersen, shuffled(petersen, random.Random(1)))

    def test_multiplicities_matter(self):
        """Test graphs differing only in edge multiplicity are told apart."""
        first = MultiGraph.from_edge_list([(0, 1), (0, 1), (1, 2), (1, 2)])
        second = MultiGraph.from_edge_list([(0, 1), (0, 1), (0, 1), (1, 2)])
        assert not is_isomorphic(first, second)

    def test_guard(self):
        """Test the vertex guard and its override."""
        with pytest.raises(CapacityError):
            is_isomorphic(path_graph(13), path_graph(13))
        assert is_isomorphic(path_graph(13), path_graph(13), guard_override=True)


class TestCanonicalForm:
    """Test cases for canonical forms."""

    @pytest.mark.parametrize("seed", range(6))
    def test_invariant_under_relabelling(self, seed):
        """Test the form does not depend on vertex ids."""
        rng = random.Random(seed)
        graph = random_connected_multigraph(7, 11, rng)
        assert canonical_form(graph) == canonical_form(shuffled(graph, rng)), f"seed {seed}"

    def test_regular_graphs_distinguished(self):
        """Test the hexagon and two disjoint triangles get different forms."""
        triangles = MultiGraph.from_edge_list([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert canonical_form(cycle_graph(6)) != canonical_form(triangles)
        assert canonical_form(complete_bipartite(3, 3)) != canonical_form(triangles)

    def test_parallel_edges_distinguished(self):
        """Test multiplicity enters the form."""
        assert canonical_form(parallel_edges(2)) != canonical_form(parallel_edges(3))

    def test_colouring(self):
        """Test coloured forms respect automorphisms only."""
        path = path_graph(3)
        assert canonical_form(path, {0: 1}) == canonical_form(path, {2: 1})
        assert canonical_form(path, {0: 1}) != canonical_form(path, {1: 1})

    def test_canonical_graph(self):
        """Test the canonical graph uses ids 0..n-1 and is isomorphic to the input."""
        petersen = shuffled(petersen_graph(), random.Random(4))
        canonical = canonical_graph(petersen)
        assert canonical.vertices == frozenset(range(10))
        assert is_isomorphic(canonical, petersen)
        assert canonical_graph(petersen_graph()) == canonical

    def test_twin_classes(self):
        """Test twin classes of complete and bipartite graphs."""
        assert twin_classes(complete_bipartite(3, 3)) == [[0, 1, 2], [3, 4, 5]]
        assert twin_classes(complete_graph(4)) == [[0, 1, 2, 3]]
        assert twin_classes(path_graph(3)) == [[0, 2], [1]]

    def test_empty_graph(self):
        """Test the graph without vertices has a form and an empty order."""
        empty = MultiGraph.from_edge_list([], [])
        form, order = canonical_labelling(empty)
        assert order == []
        assert form == canonical_form(empty)

    def test_labelling_covers_every_vertex(self):
        """Test the canonical order lists each vertex once, also with parallel edges."""
        graph = MultiGraph.from_edge_list([(3, 7), (3, 7), (7, 9), (9, 3), (9, 12)])
        _, order = canonical_labelling(graph)
        assert sorted(order) == [3, 7, 9, 12]


class TestAutomorphismOrbits:
    """Test cases for automorphism orbits."""

    def test_path(self):
        """Test the ends of a path share an orbit."""
        assert automorphism_orbits(path_graph(3)) == {0: 0, 1: 1, 2: 0}

    def test_vertex_transitive(self):
        """Test every Petersen vertex lies in one orbit."""
        assert set(automorphism_orbits(petersen_graph()).values()) == {0}

    def test_star(self):
        """Test the centre is alone and the leaves form one orbit."""
        orbits = automorphism_orbits(star_graph(4))
        assert len(set(orbits.values())) == 2

    def test_multiplicities_split_orbits(self):
        """Test a doubled edge breaks the symmetry of a triangle."""
        graph = MultiGraph.from_edge_list([(0, 1), (0, 1), (1, 2), (0, 2)])
        orbits = automorphism_orbits(graph)
        assert orbits[0] == orbits[1] != orbits[2]

    def test_colouring_fixes_vertices(self):
        """Test a coloured end leaves every path vertex alone."""
        orbits = automorphism_orbits(path_graph(3), {0: 1})
        assert len(set(orbits.values())) == 3


class TestFormsAgreeWithMatcher:
    """Test canonical forms against the matcher on random samples."""

    @pytest.mark.parametrize("seed", range(20))
    def test_random_pairs(self, seed):
        """Test equal forms exactly when the matcher finds an isomorphism."""
        rng = random.Random(seed)
        n = rng.randint(3, 7)
        m = rng.randint(n - 1, n + 4)
        first = random_connected_multigraph(n, m, rng)
        second = random_connected_multigraph(n, m, rng)
        twin = shuffled(first, rng)
        assert (canonical_form(first) == canonical_form(second)) == is_isomorphic(first, second), f"seed {seed}"
        assert canonical_form(first) == canonical_form(twin) and is_isomorphic(first, twin)

    def test_many_small_multigraphs(self):
        """Test forms and the matcher agree on every pair of four-vertex samples."""
        rng = random.Random(11)
        graphs = [random_connected_multigraph(4, rng.randint(3, 7), rng) for _ in range(60)]
        for i, first in enumerate(graphs):
            for second in graphs[i + 1:]:
                assert (canonical_form(first) == canonical_form(second)) == is_isomorphic(first, second)
