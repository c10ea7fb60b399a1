"""Edge cut and split records."""

from dataclasses import dataclass
from typing import FrozenSet, Mapping, Tuple

from .graph import MultiGraph


@dataclass(frozen=True)
class EdgeCut:
    """An edge set F with the two sides of G' minus F.

    ``side_a`` is the side holding the smallest vertex id of the component.
    """

    edges: Tuple[int, ...]
    side_a: FrozenSet[int]
    side_b: FrozenSet[int]
    minimal: bool
    internal: bool

    @property
    def size(self) -> int:
        return len(self.edges)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (len(self.edges), tuple(sorted(self.edges)))


@dataclass(frozen=True)
class SplitRecord:
    """F-split of a component together with what the matching edge sum needs."""

    cut: EdgeCut
    new_vertex_a: int
    new_vertex_b: int
    pairing: Tuple[Tuple[int, int], ...]
    component_a: MultiGraph
    component_b: MultiGraph

    @property
    def sigma(self) -> Mapping[int, int]:
        return dict(self.pairing)
