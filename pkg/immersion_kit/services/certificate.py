"""Text codecs for decomposition certificates and containment witnesses.

A certificate is a versioned header followed by one pre-order tree dump per
connected component. Vertex and edge ids are written verbatim so that a
parsed certificate recomposes to the exact input ids::

    immersion-kit-cert v1
    components 1
    component 0
    split 8 9
    cut 8 9 10
    sides 0 1 2 3 | 4 5 6 7
    pairing 8:8 9:9 10:10
    leaf
    vertices 0 1 2 3 8
    edge 0 0 1
    ...
    certificate branchwidth-at-most 3 heuristic
    bd 10
    parents -1 0 0 0 1 1 2 2 3 3
    4 -> 0
    ...

A leaf may end with the Kuratowski immersion found in it::

    immersion k5
    witness weak
    0 -> 0
    ...
    path 0 0 0
    ...
    end immersion
"""

import logging
from dataclasses import replace
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from ..core.exceptions import CertificateError, GraphDomainError
from ..models.branch import BranchDecomposition
from ..models.cuts import EdgeCut, SplitRecord
from ..models.decomposition import (
    Certainty,
    CertificateKind,
    DecompositionTree,
    LeafCertificate,
    LeafNode,
    SplitNode,
)
from ..models.graph import MultiGraph, Path
from ..models.immersion import ContainmentMode, ImmersionModel, MinorModel
from .connectivity import ConnectivityService
from .graph_io import content_lines

logger = logging.getLogger(__name__)

CERT_HEADER = "immersion-kit-cert v1"


def _ints(tokens: Sequence[str], number: int) -> List[int]:
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise CertificateError(f"line {number}: expected integers, got {' '.join(tokens)!r}") from None


def _join(values) -> str:
    return " ".join(str(value) for value in values)


def _dump_tree(tree: DecompositionTree, lines: List[str]) -> None:
    if isinstance(tree, SplitNode):
        record = tree.record
        lines.append(f"split {record.new_vertex_a} {record.new_vertex_b}")
        lines.append(f"cut {_join(record.cut.edges)}")
        lines.append(f"sides {_join(sorted(record.cut.side_a))} | {_join(sorted(record.cut.side_b))}")
        lines.append("pairing " + _join(f"{a}:{b}" for a, b in record.pairing))
        _dump_tree(tree.left, lines)
        _dump_tree(tree.right, lines)
        return

    graph = tree.graph
    lines.append("leaf")
    lines.append(f"vertices {_join(sorted(graph.vertices))}".rstrip())
    for edge_id, (u, v) in sorted(graph.edges.items()):
        lines.append(f"edge {edge_id} {u} {v}")
    certificate = tree.certificate
    if certificate.kind == CertificateKind.BRANCHWIDTH_AT_MOST:
        lines.append(f"certificate {certificate.kind.value} {certificate.bound} {certificate.certainty.value}")
        bd = certificate.decomposition
        lines.append(f"bd {bd.node_count}")
        lines.append(f"parents {_join(bd.parent_list())}".rstrip())
        for edge_id, node in sorted(bd.leaf_map.items(), key=lambda item: item[1]):
            lines.append(f"{node} -> {edge_id}")
    else:
        lines.append(f"certificate {certificate.kind.value}")
    if tree.witness is not None:
        lines.append(f"immersion {tree.witness_pattern}")
        lines.extend(dump_witness(tree.witness).splitlines())
        lines.append("end immersion")


def dump_certificate(trees: Sequence[DecompositionTree]) -> str:
    lines = [CERT_HEADER, f"components {len(trees)}"]
    for index, tree in enumerate(trees):
        lines.append(f"component {index}")
        _dump_tree(tree, lines)
    return "\n".join(lines) + "\n"


class _CertificateReader:
    """Recursive-descent reader over the content lines of a certificate."""

    def __init__(self, text: str, connectivity: ConnectivityService):
        self.lines: List[Tuple[int, List[str]]] = [(n, line.split()) for n, line in content_lines(text)]
        self.index = 0
        self.connectivity = connectivity

    def peek(self) -> Optional[Tuple[int, List[str]]]:
        return self.lines[self.index] if self.index < len(self.lines) else None

    def take(self, keyword: Optional[str] = None) -> Tuple[int, List[str]]:
        entry = self.peek()
        if entry is None:
            raise CertificateError(f"unexpected end of certificate, expected {keyword or 'more lines'}")
        number, tokens = entry
        if keyword is not None and tokens[0] != keyword:
            raise CertificateError(f"line {number}: expected {keyword!r}, got {tokens[0]!r}")
        self.index += 1
        return number, tokens

    def read(self) -> List[DecompositionTree]:
        number, tokens = self.take()
        if " ".join(tokens) != CERT_HEADER:
            raise CertificateError(f"line {number}: missing header {CERT_HEADER!r}")
        number, tokens = self.take("components")
        expected = _ints(tokens[1:], number)
        if len(expected) != 1:
            raise CertificateError(f"line {number}: malformed components line")
        trees = []
        for index in range(expected[0]):
            number, tokens = self.take("component")
            if _ints(tokens[1:], number) != [index]:
                raise CertificateError(f"line {number}: expected component {index}")
            trees.append(self.read_tree())
        if self.peek() is not None:
            raise CertificateError(f"line {self.peek()[0]}: trailing content")
        return trees

    def read_tree(self) -> DecompositionTree:
        number, tokens = self.take()
        if tokens[0] == "leaf":
            return self.read_leaf()
        if tokens[0] != "split":
            raise CertificateError(f"line {number}: expected 'leaf' or 'split', got {tokens[0]!r}")
        new_a, new_b = self._pair_of_ints(tokens, number)

        number, tokens = self.take("cut")
        cut_edges = tuple(_ints(tokens[1:], number))
        number, tokens = self.take("sides")
        if tokens.count("|") != 1:
            raise CertificateError(f"line {number}: sides need one '|' separator")
        bar = tokens.index("|")
        side_a = frozenset(_ints(tokens[1:bar], number))
        side_b = frozenset(_ints(tokens[bar + 1:], number))
        number, tokens = self.take("pairing")
        pairing = []
        for token in tokens[1:]:
            first, _, second = token.partition(":")
            pairing.append(tuple(_ints([first, second], number)))

        left = self.read_tree()
        right = self.read_tree()
        record = SplitRecord(
            cut=EdgeCut(cut_edges, side_a, side_b, minimal=True, internal=True),
            new_vertex_a=new_a,
            new_vertex_b=new_b,
            pairing=tuple(pairing),
            component_a=self._rebuild(left, number),
            component_b=self._rebuild(right, number),
        )
        return SplitNode(record, left, right)

    def _rebuild(self, tree: DecompositionTree, number: int) -> MultiGraph:
        if isinstance(tree, LeafNode):
            return tree.graph
        record = tree.record
        try:
            return self.connectivity.edge_sum(
                record.component_a, record.new_vertex_a, record.component_b, record.new_vertex_b, record.sigma
            )
        except GraphDomainError as e:
            raise CertificateError(f"split below line {number} cannot be recomposed: {e}") from None

    @staticmethod
    def _pair_of_ints(tokens: List[str], number: int) -> Tuple[int, int]:
        values = _ints(tokens[1:], number)
        if len(values) != 2:
            raise CertificateError(f"line {number}: expected two integers")
        return values[0], values[1]

    def read_leaf(self) -> LeafNode:
        number, tokens = self.take("vertices")
        vertices = _ints(tokens[1:], number)
        edges: Dict[int, Tuple[int, int]] = {}
        while self.peek() is not None and self.peek()[1][0] == "edge":
            number, tokens = self.take("edge")
            values = _ints(tokens[1:], number)
            if len(values) != 3 or values[0] in edges:
                raise CertificateError(f"line {number}: malformed or repeated edge")
            edges[values[0]] = (values[1], values[2])
        try:
            graph = MultiGraph(vertices, edges)
        except GraphDomainError as e:
            raise CertificateError(f"leaf ending at line {number}: {e}") from None

        number, tokens = self.take("certificate")
        try:
            kind = CertificateKind(tokens[1])
        except (IndexError, ValueError):
            raise CertificateError(f"line {number}: unknown certificate kind") from None
        if kind == CertificateKind.PLANAR_SUBCUBIC:
            return self.read_witness(LeafNode(graph, LeafCertificate.planar_subcubic()))
        if kind == CertificateKind.UNCERTIFIED:
            return self.read_witness(LeafNode(graph, LeafCertificate.uncertified()))

        if len(tokens) != 4:
            raise CertificateError(f"line {number}: expected bound and certainty")
        bound = _ints(tokens[2:3], number)[0]
        try:
            certainty = Certainty(tokens[3])
        except ValueError:
            raise CertificateError(f"line {number}: unknown certainty {tokens[3]!r}") from None
        return self.read_witness(LeafNode(graph, LeafCertificate(kind, bound, self.read_decomposition(), certainty)))

    def read_witness(self, leaf: LeafNode) -> LeafNode:
        """Optional ``immersion <pattern>`` block closed by ``end immersion``."""
        entry = self.peek()
        if entry is None or entry[1][0] != "immersion":
            return leaf
        number, tokens = self.take("immersion")
        if len(tokens) != 2:
            raise CertificateError(f"line {number}: expected the immersed pattern name")
        body: List[str] = []
        while True:
            _, line_tokens = self.take()
            if line_tokens == ["end", "immersion"]:
                break
            body.append(" ".join(line_tokens))
        witness = parse_witness("\n".join(body), leaf.graph)
        if not isinstance(witness, ImmersionModel):
            raise CertificateError(f"line {number}: leaf witnesses must be immersion models")
        return replace(leaf, witness_pattern=tokens[1], witness=witness)

    def read_decomposition(self) -> BranchDecomposition:
        number, tokens = self.take("bd")
        node_count = _ints(tokens[1:], number)
        number, tokens = self.take("parents")
        parents = _ints(tokens[1:], number)
        if len(node_count) != 1 or len(parents) != node_count[0]:
            raise CertificateError(f"line {number}: parent list does not match the node count")
        leaf_map: Dict[int, int] = {}
        while self.peek() is not None and len(self.peek()[1]) == 3 and self.peek()[1][1] == "->":
            number, tokens = self.take()
            node, edge_id = _ints([tokens[0], tokens[2]], number)
            leaf_map[edge_id] = node
        return BranchDecomposition.from_parent_list(parents, leaf_map)


def parse_certificate(text: str, connectivity: Optional[ConnectivityService] = None) -> List[DecompositionTree]:
    return _CertificateReader(text, connectivity or ConnectivityService()).read()


Witness = Union[ImmersionModel, MinorModel]


def dump_witness(model: Witness) -> str:
    """``h -> g`` vertex lines and one line of host edge ids per pattern edge."""
    if isinstance(model, MinorModel):
        lines = ["witness minor"]
        for h_vertex, branch in sorted(model.branch_sets.items()):
            lines.append(f"branch {h_vertex}: {_join(sorted(branch))}")
        for h_edge, g_edge in sorted(model.edge_assignment.items()):
            lines.append(f"edge {h_edge} -> {g_edge}")
        return "\n".join(lines) + "\n"

    lines = [f"witness {model.mode.value}"]
    for h_vertex, g_vertex in sorted(model.vertex_map.items()):
        lines.append(f"{h_vertex} -> {g_vertex}")
    for h_edge, path in sorted(model.branch_paths.items()):
        lines.append(f"path {h_edge} {path.start} {_join(path.edges)}".rstrip())
    return "\n".join(lines) + "\n"


def parse_witness(text: str, host: MultiGraph) -> Witness:
    entries: Iterator[Tuple[int, str]] = content_lines(text)
    try:
        number, header = next(entries)
    except StopIteration:
        raise CertificateError("empty witness") from None
    keyword, _, kind = header.partition(" ")
    if keyword != "witness":
        raise CertificateError(f"line {number}: expected a witness header")

    if kind == "minor":
        branch_sets: Dict[int, frozenset] = {}
        assignment: Dict[int, int] = {}
        for number, line in entries:
            tokens = line.replace(":", " ").split()
            if tokens[0] == "branch":
                values = _ints(tokens[1:], number)
                branch_sets[values[0]] = frozenset(values[1:])
            elif tokens[0] == "edge" and len(tokens) == 4 and tokens[2] == "->":
                h_edge, g_edge = _ints([tokens[1], tokens[3]], number)
                assignment[h_edge] = g_edge
            else:
                raise CertificateError(f"line {number}: malformed minor witness line")
        return MinorModel(branch_sets, assignment)

    try:
        mode = ContainmentMode(kind)
    except ValueError:
        raise CertificateError(f"line {number}: unknown witness kind {kind!r}") from None
    vertex_map: Dict[int, int] = {}
    paths: Dict[int, Path] = {}
    for number, line in entries:
        tokens = line.split()
        if tokens[0] == "path":
            values = _ints(tokens[1:], number)
            if len(values) < 2:
                raise CertificateError(f"line {number}: path needs a pattern edge and a start vertex")
            try:
                paths[values[0]] = Path.from_edges(host, values[1], values[2:])
            except GraphDomainError as e:
                raise CertificateError(f"line {number}: {e}") from None
        elif len(tokens) == 3 and tokens[1] == "->":
            h_vertex, g_vertex = _ints([tokens[0], tokens[2]], number)
            vertex_map[h_vertex] = g_vertex
        else:
            raise CertificateError(f"line {number}: malformed witness line")
    return ImmersionModel(vertex_map, paths, mode)
