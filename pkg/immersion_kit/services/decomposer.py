"""Recursive edge-cut decomposition with certified leaves."""

import logging
from collections import Counter
from dataclasses import replace
from itertools import count
from typing import Iterator, List, Optional, Sequence

from ..config import Settings, settings as default_settings
from ..core.exceptions import GraphDomainError
from ..core.logging import analysis_logger
from ..core.metrics import metrics_collector
from ..models.decomposition import (
    Certainty,
    CertificateKind,
    DecompositionSummary,
    DecompositionTree,
    LeafCertificate,
    LeafNode,
    NodeReport,
    NodeVerdict,
    SplitNode,
    VerificationReport,
    count_splits,
    iter_leaves,
)
from ..models.graph import MultiGraph
from .branchwidth import BranchwidthService, decomposition_problems, width_of
from .connectivity import ConnectivityService
from .embedding import EmbeddingService
from .relations import K33, K5, RelationsService
from .validators import validate_immersion_model

logger = logging.getLogger(__name__)


class DecomposerService:
    """Split along minimal internal cuts of size at most three, then certify leaves."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or default_settings
        self.connectivity = ConnectivityService(self.settings)
        self.embedding = EmbeddingService(self.settings)
        self.branchwidth = BranchwidthService(self.settings)
        self.relations = RelationsService(self.settings)

    def decompose(self, graph: MultiGraph, witnesses: bool = False) -> List[DecompositionTree]:
        """One tree per connected component, ordered by smallest vertex id.

        Fresh split vertices are drawn from one counter starting above every
        id of ``graph``, so they never collide across components. With
        ``witnesses`` each leaf within the immersion guard carries a K5 or
        K3,3 immersion when it has one.
        """
        fresh = count(graph.next_vertex_id, 2)
        trees = [
            self._decompose(component, fresh, witnesses) for component in self.connectivity.components(graph)
        ]
        summary = self.summarize(trees)
        metrics_collector.record_leaf_widths(
            [width for width, leaves in summary.leaf_width_histogram.items() for _ in range(leaves)]
        )
        analysis_logger.log_decomposition(summary.components, summary.splits, summary.leaves,
                                          summary.uncertified)
        return trees

    def _decompose(self, graph: MultiGraph, fresh: Iterator[int], witnesses: bool) -> DecompositionTree:
        cut = self.connectivity.find_internal_cut(graph, max_size=self.settings.max_cut_size)
        if cut is None:
            leaf = LeafNode(graph, self.certify_leaf(graph))
            return self.attach_witness(leaf) if witnesses else leaf
        record = self.connectivity.split(graph, cut, next_vertex_id=next(fresh))
        left = self._decompose(record.component_a, fresh, witnesses)
        right = self._decompose(record.component_b, fresh, witnesses)
        return SplitNode(record, left, right)

    def certify_leaf(self, graph: MultiGraph) -> LeafCertificate:
        """Planar sub-cubic first, then the greedy width, then exact width on small leaves."""
        bound = self.settings.leaf_branchwidth_bound
        if graph.is_subcubic() and self.embedding.is_planar(graph):
            certificate = LeafCertificate.planar_subcubic()
        else:
            width, bd = self.branchwidth.branchwidth_upper(graph)
            certificate = LeafCertificate(CertificateKind.BRANCHWIDTH_AT_MOST, width, bd, Certainty.HEURISTIC)
            if width > bound:
                certificate = LeafCertificate.uncertified()
                if graph.size <= self.settings.leaf_exact_max_edges:
                    width, bd = self.branchwidth.branchwidth_exact(graph, guard_override=True)
                    if width <= bound:
                        certificate = LeafCertificate(
                            CertificateKind.BRANCHWIDTH_AT_MOST, width, bd, Certainty.EXACT
                        )
        analysis_logger.log_leaf_certified(graph.order, graph.size, certificate.kind.value, certificate.bound)
        return certificate

    def attach_witness(self, leaf: LeafNode) -> LeafNode:
        if leaf.graph.size > self.settings.immersion_max_host_edges:
            logger.debug(f"leaf with {leaf.graph.size} edges left without an immersion witness")
            return leaf
        verdict = self.relations.is_kuratowski_immersion_free(leaf.graph)
        if verdict.free:
            return leaf
        return replace(leaf, witness_pattern=verdict.pattern, witness=verdict.witness)

    def recompose(self, tree: DecompositionTree) -> MultiGraph:
        """Fold edge sums bottom-up; ids of the original component come back exactly."""
        if isinstance(tree, LeafNode):
            return tree.graph
        record = tree.record
        return self.connectivity.edge_sum(
            self.recompose(tree.left),
            record.new_vertex_a,
            self.recompose(tree.right),
            record.new_vertex_b,
            record.sigma,
        )

    def verify_certificate(self, graph: MultiGraph, trees: Sequence[DecompositionTree]) -> VerificationReport:
        """Re-check every node from scratch, top-down from the components of ``graph``."""
        report = VerificationReport()
        components = self.connectivity.components(graph)
        if len(components) != len(trees):
            report.problems.append(f"{len(trees)} trees for {len(components)} components")
        for index, (component, tree) in enumerate(zip(components, trees)):
            self._verify_node(component, tree, str(index), report)
        analysis_logger.log_certificate_verified(len(report.nodes), len(report.failures) + len(report.problems))
        return report

    def _verify_node(self, expected: MultiGraph, tree: DecompositionTree, address: str,
                     report: VerificationReport) -> None:
        if isinstance(tree, LeafNode):
            problems = self._leaf_problems(expected, tree)
            verdict = NodeVerdict.FAIL if problems else NodeVerdict.PASS
            if not problems and tree.certificate.kind == CertificateKind.UNCERTIFIED:
                verdict = NodeVerdict.UNCERTIFIED
            report.nodes.append(NodeReport(address=address, node_type="leaf", verdict=verdict, problems=problems))
            return

        problems = self._split_problems(expected, tree)
        report.nodes.append(NodeReport(
            address=address,
            node_type="split",
            verdict=NodeVerdict.FAIL if problems else NodeVerdict.PASS,
            problems=problems,
        ))
        separator = "" if "." in address else "."
        self._verify_node(tree.record.component_a, tree.left, address + separator + "L", report)
        self._verify_node(tree.record.component_b, tree.right, address + separator + "R", report)

    def _split_problems(self, expected: MultiGraph, node: SplitNode) -> List[str]:
        problems: List[str] = []
        record = node.record
        if record.cut.size > self.settings.max_cut_size:
            problems.append(f"cut has {record.cut.size} edges")
        try:
            cut = self.connectivity.describe_cut(expected, record.cut.edges)
        except GraphDomainError as e:
            return problems + [f"cut does not fit the graph: {e}"]
        if not cut.minimal:
            problems.append("cut is not minimal")
        elif not cut.internal:
            problems.append("cut is not internal")
        elif (cut.side_a, cut.side_b) != (record.cut.side_a, record.cut.side_b):
            problems.append("recorded cut sides differ from the graph")
        if {record.new_vertex_a, record.new_vertex_b} & expected.vertices:
            problems.append("split vertices are not fresh")
        if cut.minimal and cut.internal:
            try:
                bare = MultiGraph(expected.vertices, expected.edges)
                redone = self.connectivity.split(bare, cut, next_vertex_id=record.new_vertex_a)
                if redone.component_a != record.component_a or redone.component_b != record.component_b:
                    problems.append("recorded pieces differ from the split of the graph")
            except GraphDomainError as e:
                problems.append(f"split could not be redone: {e}")
        try:
            summed = self.connectivity.edge_sum(
                record.component_a, record.new_vertex_a, record.component_b, record.new_vertex_b, record.sigma
            )
            if summed != expected:
                problems.append("edge sum of the pieces does not reproduce the graph")
        except GraphDomainError as e:
            problems.append(f"edge sum failed: {e}")
        return problems

    def _leaf_problems(self, expected: MultiGraph, leaf: LeafNode) -> List[str]:
        problems: List[str] = []
        graph = leaf.graph
        if graph != expected:
            problems.append("leaf graph differs from the expected piece")
        if not self.connectivity.is_connected(graph):
            return problems + ["leaf graph is disconnected"]
        if self.connectivity.find_internal_cut(graph, max_size=self.settings.max_cut_size) is not None:
            problems.append("leaf still has an internal cut")

        certificate = leaf.certificate
        if certificate.kind == CertificateKind.PLANAR_SUBCUBIC:
            if not self.embedding.is_planar(graph):
                problems.append("leaf claimed planar is not planar")
            if not graph.is_subcubic():
                problems.append(f"leaf claimed sub-cubic has max degree {graph.max_degree}")
        elif certificate.kind == CertificateKind.BRANCHWIDTH_AT_MOST:
            if certificate.decomposition is None or certificate.bound is None:
                return problems + ["branch-width certificate lacks its decomposition"]
            if certificate.bound > self.settings.leaf_branchwidth_bound:
                problems.append(f"bound {certificate.bound} exceeds {self.settings.leaf_branchwidth_bound}")
            bd_problems = decomposition_problems(graph, certificate.decomposition)
            if bd_problems:
                problems.extend(bd_problems)
            else:
                width = width_of(graph, certificate.decomposition)
                if width > certificate.bound:
                    problems.append(f"decomposition has width {width} above bound {certificate.bound}")
        if leaf.witness is not None:
            patterns = {"k5": K5, "k33": K33}
            if leaf.witness_pattern not in patterns:
                problems.append(f"unknown witness pattern {leaf.witness_pattern!r}")
            else:
                witness_problems = validate_immersion_model(
                    graph, patterns[leaf.witness_pattern], leaf.witness, leaf.witness.mode
                )
                problems.extend(f"{leaf.witness_pattern} witness: {problem}" for problem in witness_problems)
        return problems

    def summarize(self, trees: Sequence[DecompositionTree]) -> DecompositionSummary:
        kinds: Counter = Counter()
        widths: List[int] = []
        leaves = 0
        for tree in trees:
            for leaf in iter_leaves(tree):
                leaves += 1
                kinds[leaf.certificate.kind.value] += 1
                if leaf.certificate.kind == CertificateKind.BRANCHWIDTH_AT_MOST:
                    widths.append(leaf.certificate.bound)
        return DecompositionSummary(
            components=len(trees),
            splits=sum(count_splits(tree) for tree in trees),
            leaves=leaves,
            leaf_kinds=dict(kinds),
            leaf_width_histogram=dict(sorted(Counter(widths).items())),
            uncertified=kinds.get(CertificateKind.UNCERTIFIED.value, 0),
        )

