"""Decomposition trees, leaf certificates and verification reports."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Union

from pydantic import BaseModel, Field, computed_field

from .branch import BranchDecomposition
from .cuts import SplitRecord
from .graph import MultiGraph
from .immersion import ImmersionModel


class CertificateKind(str, Enum):
    """How a decomposition leaf is certified."""
    PLANAR_SUBCUBIC = "planar-subcubic"
    BRANCHWIDTH_AT_MOST = "branchwidth-at-most"
    UNCERTIFIED = "uncertified"


class Certainty(str, Enum):
    EXACT = "exact"
    HEURISTIC = "heuristic"


class NodeVerdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    UNCERTIFIED = "uncertified"


@dataclass(frozen=True)
class LeafCertificate:
    kind: CertificateKind
    bound: Optional[int] = None
    decomposition: Optional[BranchDecomposition] = None
    certainty: Optional[Certainty] = None

    @classmethod
    def planar_subcubic(cls) -> "LeafCertificate":
        return cls(CertificateKind.PLANAR_SUBCUBIC)

    @classmethod
    def uncertified(cls) -> "LeafCertificate":
        return cls(CertificateKind.UNCERTIFIED)


@dataclass(frozen=True)
class LeafNode:
    """Leaf piece with its certificate and, when requested, a Kuratowski immersion found in it."""

    graph: MultiGraph
    certificate: LeafCertificate
    witness_pattern: Optional[str] = None
    witness: Optional[ImmersionModel] = None


@dataclass(frozen=True)
class SplitNode:
    """Inner node: ``left`` decomposes ``record.component_a``, ``right`` the other piece."""

    record: SplitRecord
    left: "DecompositionTree"
    right: "DecompositionTree"


DecompositionTree = Union[LeafNode, SplitNode]


def iter_leaves(tree: DecompositionTree) -> Iterator[LeafNode]:
    """Leaves in pre-order (left before right)."""
    stack = [tree]
    while stack:
        node = stack.pop()
        if isinstance(node, LeafNode):
            yield node
        else:
            stack.append(node.right)
            stack.append(node.left)


def count_splits(tree: DecompositionTree) -> int:
    if isinstance(tree, LeafNode):
        return 0
    return 1 + count_splits(tree.left) + count_splits(tree.right)


class NodeReport(BaseModel):
    """Verification outcome for one tree node."""
    address: str = Field(..., description="Root-to-node path, e.g. '0.LR'")
    node_type: str = Field(..., description="'split' or 'leaf'")
    verdict: NodeVerdict = Field(..., description="Verdict for this node")
    problems: List[str] = Field(default_factory=list, description="Violated checks")


class VerificationReport(BaseModel):
    """Verdict of an independent certificate check."""
    nodes: List[NodeReport] = Field(default_factory=list, description="Per-node verdicts")
    problems: List[str] = Field(default_factory=list, description="Problems not tied to a node")

    @property
    def failures(self) -> List[NodeReport]:
        return [node for node in self.nodes if node.verdict == NodeVerdict.FAIL]

    @property
    def uncertified(self) -> List[NodeReport]:
        return [node for node in self.nodes if node.verdict == NodeVerdict.UNCERTIFIED]

    @computed_field
    @property
    def passed(self) -> bool:
        """No failures; uncertified leaves are honest and do not fail a certificate."""
        return not self.problems and not self.failures


class DecompositionSummary(BaseModel):
    """Aggregate view of a decomposition."""
    components: int = Field(..., description="Connected components decomposed")
    splits: int = Field(..., description="Split nodes over all trees")
    leaves: int = Field(..., description="Leaves over all trees")
    leaf_kinds: Dict[str, int] = Field(default_factory=dict, description="Leaf count per certificate kind")
    leaf_width_histogram: Dict[int, int] = Field(default_factory=dict, description="Certified bound -> leaf count")
    uncertified: int = Field(0, description="Uncertified leaves")

    @computed_field
    @property
    def fully_certified(self) -> bool:
        return self.uncertified == 0
