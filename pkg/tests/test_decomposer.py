"""Tests for recursive decomposition, recomposition and certificate checks."""

import random
from dataclasses import replace

import pytest

from immersion_kit.config import Settings
from immersion_kit.models.decomposition import (
    Certainty,
    CertificateKind,
    LeafCertificate,
    LeafNode,
    NodeVerdict,
    SplitNode,
    iter_leaves,
)
from immersion_kit.models.graph import MultiGraph
from immersion_kit.services.certificate import dump_certificate, parse_certificate
from immersion_kit.services.decomposer import DecomposerService
from immersion_kit.services.generators import (
    complete_graph,
    cube_graph,
    random_connected_multigraph,
    random_multigraph,
    two_k4_joined,
)
from immersion_kit.services.relations import RelationsService


@pytest.fixture
def decomposer(settings):
    """Create decomposer service instance."""
    return DecomposerService(settings)


def iter_splits(tree):
    if isinstance(tree, SplitNode):
        yield tree
        yield from iter_splits(tree.left)
        yield from iter_splits(tree.right)


class TestDecompose:
    """Test cases for decompose and recompose."""

    def test_joined_k4s(self, decomposer):
        """Test one split into two K5-minus-an-edge leaves with greedy certificates."""
        graph = two_k4_joined()
        trees = decomposer.decompose(graph)
        assert len(trees) == 1
        root = trees[0]
        assert isinstance(root, SplitNode)
        assert (root.record.new_vertex_a, root.record.new_vertex_b) == (8, 9)
        assert root.record.cut.edges == (12, 13, 14)
        for leaf in (root.left, root.right):
            assert isinstance(leaf, LeafNode)
            assert leaf.graph.order == 5 and leaf.graph.size == 9
            assert leaf.certificate.kind == CertificateKind.BRANCHWIDTH_AT_MOST
            assert leaf.certificate.certainty == Certainty.HEURISTIC
        assert decomposer.recompose(root) == graph

    def test_cube_is_one_planar_subcubic_leaf(self, decomposer):
        """Test a cyclically 4-edge-connected planar cubic graph is a leaf."""
        trees = decomposer.decompose(cube_graph())
        assert isinstance(trees[0], LeafNode)
        assert trees[0].certificate.kind == CertificateKind.PLANAR_SUBCUBIC

    def test_k5_is_one_width_leaf(self, decomposer):
        """Test K5 is certified by a width bound."""
        leaf = decomposer.decompose(complete_graph(5))[0]
        assert isinstance(leaf, LeafNode)
        assert leaf.certificate.kind == CertificateKind.BRANCHWIDTH_AT_MOST
        assert leaf.certificate.bound <= 10

    def test_components_get_separate_trees(self, decomposer):
        """Test one tree per component and no clashing split vertices."""
        first = two_k4_joined()
        second = MultiGraph(
            {v + 20 for v in first.vertices},
            {e + 20: (u + 20, v + 20) for e, (u, v) in first.edges.items()},
        )
        graph = first.disjoint_union(second)
        trees = decomposer.decompose(graph)
        assert len(trees) == 2
        fresh = [v for tree in trees for node in iter_splits(tree)
                 for v in (node.record.new_vertex_a, node.record.new_vertex_b)]
        assert len(fresh) == len(set(fresh)) == 4
        assert not set(fresh) & graph.vertices
        assert decomposer.verify_certificate(graph, trees).passed

    def test_summary(self, decomposer):
        """Test counts and the leaf width histogram."""
        summary = decomposer.summarize(decomposer.decompose(two_k4_joined()))
        assert (summary.components, summary.splits, summary.leaves) == (1, 1, 2)
        assert summary.leaf_kinds == {"branchwidth-at-most": 2}
        assert sum(summary.leaf_width_histogram.values()) == 2
        assert summary.fully_certified

    def test_uncertified_leaf(self):
        """Test a leaf above every bound is marked uncertified."""
        strict = DecomposerService(Settings(leaf_branchwidth_bound=2, leaf_exact_max_edges=0))
        trees = strict.decompose(complete_graph(5))
        assert trees[0].certificate.kind == CertificateKind.UNCERTIFIED
        report = strict.verify_certificate(complete_graph(5), trees)
        assert report.passed
        assert [node.address for node in report.uncertified] == ["0"]
        assert not strict.summarize(trees).fully_certified

    def test_exact_rescues_small_leaf(self):
        """Test a tight bound still certifies K5 at its true width."""
        strict = DecomposerService(Settings(leaf_branchwidth_bound=4, leaf_exact_max_edges=12))
        leaf = strict.decompose(complete_graph(5))[0]
        assert leaf.certificate.kind == CertificateKind.BRANCHWIDTH_AT_MOST
        assert leaf.certificate.bound == 4

    @pytest.mark.parametrize("seed", range(25))
    def test_round_trip(self, decomposer, seed):
        """Test recompose(decompose(G)) reproduces every component exactly."""
        rng = random.Random(seed)
        graph = random_multigraph(rng.randint(4, 10), rng.randint(5, 18), rng)
        trees = decomposer.decompose(graph)
        components = decomposer.connectivity.components(graph)
        assert [decomposer.recompose(tree) for tree in trees] == components, f"seed {seed}"
        assert decomposer.verify_certificate(graph, trees).passed

    @pytest.mark.slow
    def test_round_trip_many(self, decomposer):
        """Test five hundred random multigraphs with up to thirty edges."""
        rng = random.Random(2024)
        for _ in range(500):
            graph = random_connected_multigraph(rng.randint(4, 12), rng.randint(12, 30), rng)
            trees = decomposer.decompose(graph)
            assert decomposer.recompose(trees[0]) == graph
            assert decomposer.verify_certificate(graph, trees).passed


class TestVerifyCertificate:
    """Test cases for the independent verifier."""

    def test_honest_certificate_passes(self, decomposer):
        """Test every node of a fresh decomposition passes."""
        graph = two_k4_joined()
        report = decomposer.verify_certificate(graph, decomposer.decompose(graph))
        assert report.passed
        assert [node.address for node in report.nodes] == ["0", "0.L", "0.R"]
        assert all(node.verdict == NodeVerdict.PASS for node in report.nodes)

    def test_parsed_certificate_passes(self, decomposer):
        """Test a dumped and parsed certificate still verifies."""
        graph = two_k4_joined()
        parsed = parse_certificate(dump_certificate(decomposer.decompose(graph)))
        assert decomposer.verify_certificate(graph, parsed).passed

    def test_tampered_pairing_fails(self, decomposer):
        """Test a swapped pairing breaks the edge sum at the root."""
        graph = two_k4_joined()
        text = dump_certificate(decomposer.decompose(graph))
        tampered = text.replace("pairing 12:12 13:13 14:14", "pairing 12:13 13:12 14:14")
        assert tampered != text
        report = decomposer.verify_certificate(graph, parse_certificate(tampered))
        assert not report.passed
        assert [node.address for node in report.failures] == ["0"]

    def test_fake_planar_subcubic_claim(self, decomposer):
        """Test K5 cannot pass as planar and sub-cubic."""
        k5 = complete_graph(5)
        report = decomposer.verify_certificate(k5, [LeafNode(k5, LeafCertificate.planar_subcubic())])
        problems = report.failures[0].problems
        assert any("not planar" in problem for problem in problems)
        assert any("max degree 4" in problem for problem in problems)

    def test_fake_bound(self, decomposer):
        """Test a bound below the decomposition's width fails."""
        k5 = complete_graph(5)
        width, bd = decomposer.branchwidth.branchwidth_upper(k5)
        fake = LeafCertificate(CertificateKind.BRANCHWIDTH_AT_MOST, width - 1, bd, Certainty.HEURISTIC)
        report = decomposer.verify_certificate(k5, [LeafNode(k5, fake)])
        assert any("above bound" in problem for problem in report.failures[0].problems)

    def test_leaf_with_internal_cut_fails(self, decomposer):
        """Test leaves must be free of small internal cuts."""
        graph = two_k4_joined()
        width, bd = decomposer.branchwidth.branchwidth_upper(graph)
        certificate = LeafCertificate(CertificateKind.BRANCHWIDTH_AT_MOST, width, bd, Certainty.HEURISTIC)
        report = decomposer.verify_certificate(graph, [LeafNode(graph, certificate)])
        assert any("internal cut" in problem for problem in report.failures[0].problems)

    def test_tree_count_mismatch(self, decomposer):
        """Test one tree is needed per component."""
        report = decomposer.verify_certificate(cube_graph(), [])
        assert not report.passed
        assert report.problems


class TestLeafWitnesses:
    """Test cases for Kuratowski immersions embedded in leaves."""

    def test_k5_leaf_carries_its_immersion(self, decomposer):
        """Test the K5 leaf gets a K5 witness that survives the text round trip."""
        k5 = complete_graph(5)
        trees = decomposer.decompose(k5, witnesses=True)
        leaf = trees[0]
        assert leaf.witness_pattern == "k5"
        text = dump_certificate(trees)
        assert "immersion k5\nwitness weak\n" in text
        assert text.rstrip().endswith("end immersion")
        parsed = parse_certificate(text)
        assert parsed[0].witness_pattern == "k5"
        assert parsed[0].witness.vertex_map == leaf.witness.vertex_map
        assert {e: p.edges for e, p in parsed[0].witness.branch_paths.items()} == \
            {e: p.edges for e, p in leaf.witness.branch_paths.items()}
        assert decomposer.verify_certificate(k5, parsed).passed

    def test_free_leaves_carry_nothing(self, decomposer):
        """Test leaves without a Kuratowski immersion stay bare."""
        trees = decomposer.decompose(two_k4_joined(), witnesses=True)
        assert all(leaf.witness is None for leaf in iter_leaves(trees[0]))
        assert "immersion" not in dump_certificate(trees).replace("immersion-kit-cert", "")

    def test_off_by_default(self, decomposer):
        """Test witnesses are only searched on request."""
        assert decomposer.decompose(complete_graph(5))[0].witness is None

    def test_broken_witness_fails(self, decomposer):
        """Test a witness mapping two pattern vertices together is reported."""
        k5 = complete_graph(5)
        leaf = decomposer.decompose(k5, witnesses=True)[0]
        vertex_map = dict(leaf.witness.vertex_map)
        vertex_map[1] = vertex_map[0]
        broken = replace(leaf, witness=replace(leaf.witness, vertex_map=vertex_map))
        report = decomposer.verify_certificate(k5, [broken])
        assert any(problem.startswith("k5 witness:") for problem in report.failures[0].problems)

    def test_unknown_pattern_fails(self, decomposer):
        """Test a witness for an unknown pattern name is reported."""
        k5 = complete_graph(5)
        leaf = decomposer.decompose(k5, witnesses=True)[0]
        report = decomposer.verify_certificate(k5, [replace(leaf, witness_pattern="k7")])
        assert "unknown witness pattern 'k7'" in report.failures[0].problems


class TestImmersionFreeSplits:
    """Splitting immersion-free graphs keeps both sides immersion-free."""

    def _check(self, decomposer, graphs):
        relations = RelationsService(decomposer.settings)
        for graph in graphs:
            trees = decomposer.decompose(graph)
            for tree in trees:
                for node in iter_splits(tree):
                    for piece in (node.record.component_a, node.record.component_b):
                        assert relations.is_kuratowski_immersion_free(piece).free, dict(graph.edges)
                assert all(leaf.certificate.kind != CertificateKind.UNCERTIFIED for leaf in iter_leaves(tree))
            assert decomposer.verify_certificate(graph, trees).passed

    def test_sampled_graphs(self, decomposer, immersion_free_sampler):
        """Test fifteen sampled graphs with up to sixteen edges."""
        self._check(decomposer, immersion_free_sampler(15, 16, 7))

    @pytest.mark.slow
    def test_many_sampled_graphs(self, decomposer, immersion_free_sampler):
        """Test three hundred sampled graphs with up to twenty edges."""
        self._check(decomposer, immersion_free_sampler(300, 20, 11))
