"""Containment witnesses: immersion, topological minor and minor models."""

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Mapping, Optional

from .graph import Path


class ContainmentMode(str, Enum):
    """How branch paths of a model may interact."""
    WEAK = "weak"            # edge-disjoint
    STRONG = "strong"        # edge-disjoint, interiors avoid the image
    TOPOLOGICAL = "topological"  # internally vertex-disjoint


@dataclass(frozen=True)
class ImmersionModel:
    """Injective vertex map plus one connecting path per pattern edge.

    ``branch_paths`` is keyed by pattern edge id. The same type carries
    topological minor models, with ``mode`` set accordingly.
    """

    vertex_map: Mapping[int, int]
    branch_paths: Mapping[int, Path]
    mode: ContainmentMode = ContainmentMode.WEAK

    @property
    def image(self) -> FrozenSet[int]:
        return frozenset(self.vertex_map.values())

    @property
    def used_edges(self) -> FrozenSet[int]:
        return frozenset(edge_id for path in self.branch_paths.values() for edge_id in path.edges)


@dataclass(frozen=True)
class MinorModel:
    """Disjoint connected branch sets plus one host edge per pattern edge."""

    branch_sets: Mapping[int, FrozenSet[int]]
    edge_assignment: Mapping[int, int]


@dataclass(frozen=True)
class KuratowskiVerdict:
    free: bool
    pattern: Optional[str] = None
    witness: Optional[ImmersionModel] = None
