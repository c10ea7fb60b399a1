"""Fans of edge-disjoint paths and their overlap accounting."""

from dataclasses import dataclass, field, replace
from typing import FrozenSet, Mapping, Optional, Tuple

from .embedding import RotationSystem
from .graph import MultiGraph, Path


@dataclass(frozen=True)
class PathFan:
    """``paths[j]`` runs from ``root`` to ``terminals[j]`` in ``host``."""

    root: int
    terminals: Tuple[int, ...]
    paths: Tuple[Path, ...]
    host: MultiGraph
    rs: Optional[RotationSystem] = None

    @property
    def edge_set(self) -> FrozenSet[int]:
        return frozenset(edge_id for path in self.paths for edge_id in path.edges)

    def with_paths(self, paths) -> "PathFan":
        return replace(self, paths=tuple(paths))

    def problems(self) -> Tuple[str, ...]:
        """Violations of the fan invariants; empty when the fan is valid."""
        issues = []
        if len(self.paths) != len(self.terminals):
            issues.append("path count differs from terminal count")
        used = set()
        for index, path in enumerate(self.paths):
            if not path.is_valid_in(self.host):
                issues.append(f"path {index} is not a path of the host")
            if path.start != self.root:
                issues.append(f"path {index} does not start at the root")
            if index < len(self.terminals) and path.end != self.terminals[index]:
                issues.append(f"path {index} does not end at terminal {self.terminals[index]}")
            if used & path.edge_set:
                issues.append(f"path {index} shares edges with an earlier path")
            used |= path.edge_set
        return tuple(issues)


@dataclass(frozen=True)
class OverlapWitness:
    vertex: int
    first: int
    second: int


@dataclass(frozen=True)
class OverlapReport:
    """f(x) per vertex and the potential g as their sum."""

    counts: Mapping[int, int]
    witnesses: Tuple[OverlapWitness, ...] = field(default_factory=tuple)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def is_confluent(self) -> bool:
        return self.total == 0
