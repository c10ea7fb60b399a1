"""Records produced by the small-graph search."""

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field


class SearchResult(BaseModel):
    """One graph reported by the search."""
    edges: List[Tuple[int, int]] = Field(..., description="Edge list on vertices 0..n-1 in canonical labelling")
    vertex_count: int = Field(..., description="Number of vertices")
    branchwidth: int = Field(..., description="Branch-width; a lower bound when branchwidth_exact is false")
    branchwidth_exact: bool = Field(default=True, description="Whether branchwidth is the exact value")
    branchwidth_upper: int = Field(..., description="Best known upper bound")
    max_degree: int = Field(..., description="Maximum degree")
    immersion_free: bool = Field(..., description="No K5 or K3,3 immersion")
    witness_pattern: Optional[str] = Field(default=None, description="Immersed Kuratowski graph when not free")
    witness_path: Optional[str] = Field(default=None, description="Witness file when not free")


class SearchCriteria(BaseModel):
    """Filters of a search run."""
    max_n: int = Field(..., description="Largest vertex count")
    bw_at_least: int = Field(default=0, description="Smallest branch-width reported")
    non_subcubic: bool = Field(default=False, description="Only graphs with a vertex of degree at least 4")
    immersion_free_only: bool = Field(default=False, description="Only {K5, K3,3}-immersion-free graphs")


class SearchReport(BaseModel):
    criteria: SearchCriteria
    generated: List[int] = Field(default_factory=list, description="Connected graphs generated per vertex count")
    results: List[SearchResult] = Field(default_factory=list)
