"""Models package for immersion-kit."""

from .branch import BranchDecomposition, Cylinder
from .cuts import EdgeCut, SplitRecord
from .decomposition import (
    Certainty,
    CertificateKind,
    DecompositionSummary,
    DecompositionTree,
    LeafCertificate,
    LeafNode,
    NodeVerdict,
    SplitNode,
    VerificationReport,
)
from .embedding import RotationSystem, SideLabel
from .fan import OverlapReport, PathFan
from .graph import MultiGraph, Path
from .immersion import ContainmentMode, ImmersionModel, KuratowskiVerdict, MinorModel
from .search import SearchCriteria, SearchReport, SearchResult

__all__ = [
    "BranchDecomposition",
    "Cylinder",
    "EdgeCut",
    "SplitRecord",
    "Certainty",
    "CertificateKind",
    "DecompositionSummary",
    "DecompositionTree",
    "LeafCertificate",
    "LeafNode",
    "NodeVerdict",
    "SplitNode",
    "VerificationReport",
    "RotationSystem",
    "SideLabel",
    "OverlapReport",
    "PathFan",
    "MultiGraph",
    "Path",
    "ContainmentMode",
    "ImmersionModel",
    "KuratowskiVerdict",
    "MinorModel",
    "SearchCriteria",
    "SearchReport",
    "SearchResult",
]
