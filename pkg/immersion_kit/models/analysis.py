"""Request and response models for the HTTP analysis surface."""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from .decomposition import DecompositionSummary, VerificationReport


class RelationKind(str, Enum):
    """Containment relation requested by a check."""
    IMMERSION = "immersion"
    STRONG_IMMERSION = "strong-immersion"
    TOPOLOGICAL_MINOR = "topological-minor"
    MINOR = "minor"


class CheckRequest(BaseModel):
    """Containment query on graphs in the interchange text format."""
    graph: str = Field(..., description="Host graph text")
    pattern: str = Field(default="k5", description="k5, k33 or a graph text")
    relation: RelationKind = Field(default=RelationKind.IMMERSION, description="Relation to test")
    guard_override: bool = Field(default=False, description="Ignore scale guards")


class CheckResponse(BaseModel):
    contained: bool = Field(..., description="Whether the pattern is contained")
    relation: RelationKind = Field(..., description="Relation tested")
    witness: Optional[str] = Field(default=None, description="Witness text when contained")
    execution_time_ms: float = Field(..., description="Execution time in milliseconds")


class DecomposeRequest(BaseModel):
    graph: str = Field(..., description="Graph text")
    verify: bool = Field(default=True, description="Re-verify the certificate before answering")
    witnesses: bool = Field(default=False, description="Embed K5 and K3,3 immersions found in leaves")


class DecomposeResponse(BaseModel):
    certificate: str = Field(..., description="Certificate text")
    summary: DecompositionSummary = Field(..., description="Decomposition summary")
    verification: Optional[VerificationReport] = Field(default=None, description="Verification report")
    execution_time_ms: float = Field(..., description="Execution time in milliseconds")


class BranchwidthRequest(BaseModel):
    graph: str = Field(..., description="Graph text")
    exact: bool = Field(default=False, description="Run the exhaustive search")
    guard_override: bool = Field(default=False, description="Ignore scale guards")


class BranchwidthResponse(BaseModel):
    lower: int = Field(..., description="Lower bound on the branch-width")
    upper: int = Field(..., description="Width of the returned decomposition")
    exact: bool = Field(..., description="Whether lower equals upper")
    parents: List[int] = Field(..., description="Parent list of the decomposition tree")
    leaf_map: Dict[int, int] = Field(..., description="Edge id -> tree leaf")
    execution_time_ms: float = Field(..., description="Execution time in milliseconds")
