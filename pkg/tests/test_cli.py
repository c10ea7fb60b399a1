"""Tests for the command-line surface."""

import re

import pytest

from immersion_kit import cli
from immersion_kit.config import Settings
from immersion_kit.services.generators import (
    complete_bipartite,
    complete_graph,
    cube_graph,
    petersen_graph,
    two_k4_joined,
)
from immersion_kit.services.graph_io import write_graph
from immersion_kit.services.search import REPORT_HEADER


@pytest.fixture
def graph_file(tmp_path):
    """Create a helper writing a graph to a temporary file."""
    def write(name, graph):
        path = tmp_path / f"{name}.graph"
        write_graph(path, graph)
        return str(path)
    return write


class TestCheck:
    """Test cases for the check command."""

    def test_contained(self, graph_file, capsys):
        """Test a K3,3 witness is printed for the Petersen graph."""
        code = cli.main(["check", graph_file("petersen", petersen_graph()), "k33"])
        assert code == cli.EXIT_OK
        assert capsys.readouterr().out.startswith("witness weak")

    def test_not_contained(self, graph_file, capsys):
        """Test the cube does not immerse K3,3."""
        code = cli.main(["check", graph_file("cube", cube_graph()), "k33"])
        assert code == cli.EXIT_NEGATIVE
        assert "k33: not immersed" in capsys.readouterr().out

    @pytest.mark.parametrize("graph,pattern,extra,expected", [
        (complete_graph(5), "k5", [], cli.EXIT_OK),
        (cube_graph(), "k5", [], cli.EXIT_NEGATIVE),
        (complete_bipartite(3, 3), "k33", ["--strong"], cli.EXIT_OK),
    ])
    def test_exit_codes(self, graph_file, graph, pattern, extra, expected):
        """Test the containment exit code contract."""
        assert cli.main(["check", graph_file("host", graph), pattern, *extra]) == expected

    def test_pattern_from_file(self, graph_file):
        """Test file: patterns."""
        pattern = graph_file("k4", complete_graph(4))
        assert cli.main(["check", graph_file("k5", complete_graph(5)), f"file:{pattern}"]) == cli.EXIT_OK

    def test_unknown_pattern(self, graph_file, capsys):
        """Test an unknown pattern is a usage error."""
        code = cli.main(["check", graph_file("cube", cube_graph()), "petersen"])
        assert code == cli.EXIT_USAGE
        assert capsys.readouterr().err.startswith("error:")

    def test_missing_file(self, tmp_path):
        """Test unreadable input is a usage error."""
        assert cli.main(["check", str(tmp_path / "absent.graph"), "k5"]) == cli.EXIT_USAGE

    def test_missing_arguments(self):
        """Test argparse rejects a bare invocation."""
        with pytest.raises(SystemExit) as exc:
            cli.main([])
        assert exc.value.code == 2


class TestDecomposeAndVerify:
    """Test cases for decompose and verify."""

    def test_decompose_then_verify(self, graph_file, tmp_path, capsys):
        """Test a written certificate verifies node by node."""
        graph = graph_file("joined", two_k4_joined())
        certificate = tmp_path / "joined.cert"
        assert cli.main(["decompose", graph, "--out", str(certificate), "--verify"]) == cli.EXIT_OK
        assert "components=1 splits=1 leaves=2 uncertified=0" in capsys.readouterr().err

        assert cli.main(["verify", graph, str(certificate)]) == cli.EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert [line.split()[0] for line in lines] == ["0", "0.L", "0.R"]
        assert all(" pass" in line for line in lines)

    def test_tampered_bound(self, graph_file, tmp_path, capsys):
        """Test a lowered width bound fails verification."""
        graph = graph_file("k5", complete_graph(5))
        certificate = tmp_path / "k5.cert"
        assert cli.main(["decompose", graph, "--out", str(certificate)]) == cli.EXIT_OK
        text = certificate.read_text()
        certificate.write_text(re.sub(r"branchwidth-at-most \d+", "branchwidth-at-most 1", text))
        capsys.readouterr()
        assert cli.main(["verify", graph, str(certificate)]) == cli.EXIT_NEGATIVE
        assert "above bound" in capsys.readouterr().out

    def test_uncertified(self, graph_file, tmp_path, monkeypatch):
        """Test leaves beyond every bound give exit code three."""
        monkeypatch.setattr(cli, "default_settings", Settings(leaf_branchwidth_bound=2, leaf_exact_max_edges=0))
        graph = graph_file("k5", complete_graph(5))
        certificate = tmp_path / "k5.cert"
        assert cli.main(["decompose", graph, "--out", str(certificate)]) == cli.EXIT_UNCERTIFIED
        assert cli.main(["verify", graph, str(certificate)]) == cli.EXIT_UNCERTIFIED

    def test_witnesses_flag(self, graph_file, tmp_path):
        """Test --witnesses embeds the K5 immersion and the certificate still verifies."""
        graph = graph_file("k5", complete_graph(5))
        certificate = tmp_path / "k5.cert"
        assert cli.main(["decompose", graph, "--witnesses", "--out", str(certificate), "--verify"]) == cli.EXIT_OK
        assert "immersion k5" in certificate.read_text()
        assert cli.main(["verify", graph, str(certificate)]) == cli.EXIT_OK

    def test_malformed_certificate(self, graph_file, tmp_path):
        """Test a broken certificate is a usage error."""
        certificate = tmp_path / "bad.cert"
        certificate.write_text("not a certificate\n")
        assert cli.main(["verify", graph_file("cube", cube_graph()), str(certificate)]) == cli.EXIT_USAGE


class TestBranchwidth:
    """Test cases for the branchwidth command."""

    def test_exact(self, graph_file, capsys):
        """Test K4 has branch-width three."""
        assert cli.main(["branchwidth", graph_file("k4", complete_graph(4)), "--exact"]) == cli.EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "branchwidth 3 exact"
        assert lines[1].startswith("parents ")
        assert len(lines) == 2 + 6

    def test_bounds_with_seed(self, graph_file, capsys):
        """Test the global seed flag is accepted."""
        assert cli.main(["--seed", "7", "branchwidth", graph_file("cube", cube_graph())]) == cli.EXIT_OK
        assert capsys.readouterr().out.startswith("branchwidth ")

    def test_guard(self, graph_file):
        """Test the exact guard is a usage error."""
        assert cli.main(["branchwidth", graph_file("petersen", petersen_graph()), "--exact"]) == cli.EXIT_USAGE


class TestSearch:
    """Test cases for the search command."""

    def test_report_file(self, tmp_path, capsys):
        """Test the report is written to --out."""
        out = tmp_path / "report.txt"
        assert cli.main(["search", "--max-n", "4", "--out", str(out)]) == cli.EXIT_OK
        assert out.read_text().startswith(REPORT_HEADER)
        assert "generated=10" in capsys.readouterr().err

    def test_jobs(self, tmp_path):
        """Test --jobs gives the same report as a single worker."""
        single, pooled = tmp_path / "single.txt", tmp_path / "pooled.txt"
        args = ["search", "--max-n", "5", "--bw-at-least", "3"]
        assert cli.main([*args, "--out", str(single)]) == cli.EXIT_OK
        assert cli.main([*args, "--jobs", "2", "--out", str(pooled)]) == cli.EXIT_OK
        assert single.read_text() == pooled.read_text()

    def test_guard(self):
        """Test the vertex guard is a usage error."""
        assert cli.main(["search", "--max-n", "9"]) == cli.EXIT_USAGE
