"""Tests for the graph, rotation-system and fan text codecs."""

import pytest

from immersion_kit.core.exceptions import GraphFormatError
from immersion_kit.models.graph import MultiGraph
from immersion_kit.services.embedding import EmbeddingService
from immersion_kit.services.generators import cube_graph
from immersion_kit.services.graph_io import (
    dump_fan,
    dump_graph,
    dump_rotation,
    parse_fan,
    parse_graph,
    parse_rotation,
    read_graph,
    write_graph,
)


class TestGraphCodec:
    """Test cases for the interchange format."""

    def test_parse_with_comments_and_parallel_edges(self):
        """Test comments, blank lines and repeated lines."""
        text = "# doubled edge plus a pendant\n3 3\n\n0 1\n0 1  # copy\n2 1\n"
        graph = parse_graph(text)
        assert graph.order == 3
        assert graph.multiplicity(0, 1) == 2
        assert graph.endpoints(2) == (1, 2)

    @pytest.mark.parametrize("text,line", [
        ("2 2\n0 1\n", 2),
        ("3 1\n1 1\n", 2),
        ("3 1\n0 3\n", 2),
        ("3 1\n0 x\n", 2),
        ("3\n", 1),
    ])
    def test_malformed_input(self, text, line):
        """Test format errors carry the offending line number."""
        with pytest.raises(GraphFormatError) as excinfo:
            parse_graph(text)
        assert excinfo.value.line == line

    def test_empty_text(self):
        """Test empty input is rejected."""
        with pytest.raises(GraphFormatError):
            parse_graph("# nothing\n")

    def test_dump_renumbers_vertices(self):
        """Test the writer renumbers vertices in ascending id order."""
        graph = MultiGraph({10, 20, 30}, {4: (20, 30), 9: (10, 20)})
        assert dump_graph(graph) == "3 2\n0 1\n1 2\n"

    def test_file_round_trip(self, tmp_path):
        """Test writing and reading a graph file."""
        path = tmp_path / "cube.txt"
        write_graph(path, cube_graph())
        assert read_graph(path).same_edge_multiset(cube_graph())


class TestRotationCodec:
    """Test cases for rotation-system text."""

    def test_round_trip(self):
        """Test a dumped rotation system parses back to the same cyclic orders."""
        cube = cube_graph()
        rs = EmbeddingService().embed_planar(cube)
        parsed = parse_rotation(dump_rotation(rs), cube)
        assert parsed.rotation == rs.rotation
        assert parsed.is_spherical()

    def test_missing_edge_rejected(self):
        """Test a rotation that omits an incident edge is rejected."""
        graph = MultiGraph.from_edge_list([(0, 1), (1, 2)])
        with pytest.raises(GraphFormatError):
            parse_rotation("0: 0\n1: 0\n2: 1\n", graph)

    def test_duplicate_vertex_rejected(self):
        """Test a vertex may be listed once."""
        graph = MultiGraph.from_edge_list([(0, 1)])
        with pytest.raises(GraphFormatError):
            parse_rotation("0: 0\n0: 0\n1: 0\n", graph)


class TestFanCodec:
    """Test cases for fan text."""

    @pytest.fixture
    def host(self):
        """Create a path 0-1-2 with a pendant edge 0-3."""
        return MultiGraph.from_edge_list([(0, 1), (1, 2), (0, 3)])

    def test_parse_and_dump(self, host):
        """Test a fan parses into paths and dumps back to the same text."""
        text = "root 0\nterminals 2 3\npath 0 1\npath 2\n"
        fan = parse_fan(text, host)
        assert fan.paths[0].vertices == (0, 1, 2)
        assert fan.paths[1].vertices == (0, 3)
        assert dump_fan(fan) == text

    def test_wrong_terminal(self, host):
        """Test paths must end at their terminal."""
        with pytest.raises(GraphFormatError):
            parse_fan("root 0\nterminals 3 2\npath 0 1\npath 2\n", host)

    def test_unknown_keyword(self, host):
        """Test unknown lines are rejected."""
        with pytest.raises(GraphFormatError):
            parse_fan("root 0\nleaves 2\n", host)

    def test_edge_not_at_walk(self, host):
        """Test a path whose edges do not chain is rejected."""
        with pytest.raises(GraphFormatError):
            parse_fan("root 0\nterminals 2\npath 1\n", host)
