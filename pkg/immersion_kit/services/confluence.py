"""Path surgery on fans of edge-disjoint paths in embedded graphs."""

import logging
from typing import Dict, List, Optional, Tuple

from ..config import Settings, settings as default_settings
from ..core.exceptions import GraphDomainError, InternalInvariantError
from ..core.logging import analysis_logger
from ..models.fan import OverlapReport, OverlapWitness, PathFan
from ..models.graph import MultiGraph, Path
from .connectivity import ConnectivityService
from .embedding import EmbeddingService

logger = logging.getLogger(__name__)


def _common_order(path: Path, common) -> List[int]:
    return [vertex for vertex in path.vertices if vertex in common]


def is_well_arranged(first: Path, second: Path) -> bool:
    """Shared vertices appear in the same order along both paths."""
    if first.start != second.start:
        raise GraphDomainError("paths do not share their start vertex")
    common = set(first.vertices) & set(second.vertices)
    return _common_order(first, common) == _common_order(second, common)


def rewire_well_arranged(first: Path, second: Path) -> Tuple[Path, Path]:
    """Exchange segments at the first disagreement of the shared-vertex orders.

    With shared vertices ``v, u1, ..., uk`` in ``first``'s order and ``lam``
    the first position where ``second`` disagrees, returns

        first[v, u(lam-1)] + second[u(lam-1), u'(lam)] + first[u'(lam), end]
        second[v, u(lam-1)] + first[u(lam-1), u(lam)] + second[u(lam), end]

    where ``u'(lam)`` is ``second``'s vertex at that position. Both results
    keep their endpoints and use strictly fewer edges in total.
    """
    if first.start != second.start:
        raise GraphDomainError("paths do not share their start vertex")
    if first.edge_set & second.edge_set:
        raise GraphDomainError("paths are not edge-disjoint")
    common = set(first.vertices) & set(second.vertices)
    order_first = _common_order(first, common)
    order_second = _common_order(second, common)
    if order_first == order_second:
        raise GraphDomainError("paths are already well-arranged")

    lam = next(i for i, (a, b) in enumerate(zip(order_first, order_second)) if a != b)
    before = order_first[lam - 1]
    own, other = order_first[lam], order_second[lam]

    new_first = first.subpath(first.start, before).concat(second.subpath(before, other)).concat(
        first.subpath(other, first.end)
    )
    new_second = second.subpath(second.start, before).concat(first.subpath(before, own)).concat(
        second.subpath(own, second.end)
    )
    return new_first, new_second


class ConfluenceService:
    """Overlap accounting and untangling of embedded fans."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or default_settings
        self.connectivity = ConnectivityService(self.settings)
        self.embedding = EmbeddingService(self.settings)

    def overlap_report(self, fan: PathFan) -> OverlapReport:
        """f(x) for every path vertex; pairs cross at x when p2 meets both sides of p1."""
        if fan.rs is None:
            raise GraphDomainError("overlap report needs a rotation system")
        counts: Dict[int, int] = {vertex: 0 for path in fan.paths for vertex in path.vertices}
        witnesses: List[OverlapWitness] = []
        for i, first in enumerate(fan.paths):
            for j in range(i + 1, len(fan.paths)):
                second = fan.paths[j]
                for x in sorted(set(first.interior) & set(second.interior)):
                    # four distinct edges meet at x, so degree 3 never overlaps
                    if len(fan.rs.cyclic_order(x)) < 4:
                        continue
                    p_in, p_out = first.edges_at(x)
                    sides = {
                        self.embedding.local_sides(fan.rs, x, p_in, p_out, query)
                        for query in second.edges_at(x)
                    }
                    if len(sides) == 2:
                        counts[x] += 1
                        witnesses.append(OverlapWitness(x, i, j))
        return OverlapReport(counts, tuple(witnesses))

    def _carries_fan(self, graph: MultiGraph, fan: PathFan) -> bool:
        if graph.degree(fan.root) < len(fan.terminals):
            return False
        return self.connectivity.menger_fan(graph, fan.root, fan.terminals) is not None

    def _minimal_support(self, fan: PathFan) -> MultiGraph:
        """Inclusion-minimal edge subset of the fan's union still carrying a fan."""
        support = fan.host.edge_subgraph(fan.edge_set)
        for edge_id in sorted(fan.edge_set):
            trial = support.delete(edges=[edge_id])
            if self._carries_fan(trial, fan):
                support = trial
        logger.debug(f"fan support reduced from {len(fan.edge_set)} to {support.size} edges")
        return support

    def untangle(self, fan: PathFan) -> PathFan:
        """Confluent, pairwise well-arranged fan on a subset of the input fan's edges."""
        if fan.rs is None:
            raise GraphDomainError("untangle needs a rotation system")
        problems = fan.problems()
        if problems:
            raise GraphDomainError("invalid fan: " + "; ".join(problems))
        if not fan.paths:
            return fan
        if self.overlap_report(fan).is_confluent and all(
            is_well_arranged(first, second)
            for i, first in enumerate(fan.paths)
            for second in fan.paths[i + 1:]
        ):
            return fan

        support = self._minimal_support(fan)
        paths = self.connectivity.menger_fan(support, fan.root, fan.terminals)
        if paths is None:
            raise InternalInvariantError("minimal support lost its fan")
        paths = self._arrange(paths)
        current = fan.with_paths(paths)

        report = self.overlap_report(current)
        while report.total > 0:
            index, vertex, partner = self._pick_exchange(current, report)
            first, second = current.paths[index], current.paths[partner]
            exchanged = list(current.paths)
            exchanged[index] = second.subpath(second.start, vertex).concat(first.subpath(vertex, first.end))
            exchanged[partner] = first.subpath(first.start, vertex).concat(second.subpath(vertex, second.end))
            candidate = current.with_paths(exchanged)
            after = self.overlap_report(candidate)
            analysis_logger.log_untangle_step(vertex, (index, partner), report.total, after.total)
            if after.total >= report.total:
                logger.error(f"potential did not drop at vertex {vertex}: {report.total} -> {after.total}")
                raise InternalInvariantError("overlap potential did not strictly decrease")
            current, report = candidate, after
        return current

    def _arrange(self, paths: List[Path]) -> List[Path]:
        """Rewire pairs until all are well-arranged."""
        paths = list(paths)
        changed = True
        while changed:
            changed = False
            for i in range(len(paths)):
                for j in range(i + 1, len(paths)):
                    if not is_well_arranged(paths[i], paths[j]):
                        logger.warning(f"paths {i} and {j} of a minimal fan are not well-arranged")
                        paths[i], paths[j] = rewire_well_arranged(paths[i], paths[j])
                        changed = True
        return paths

    @staticmethod
    def _pick_exchange(fan: PathFan, report: OverlapReport) -> Tuple[int, int, int]:
        """Lowest path index with an overlap, its overlap nearest the terminal, lowest partner."""
        for index, path in enumerate(fan.paths):
            mine = [w for w in report.witnesses if index in (w.first, w.second)]
            if not mine:
                continue
            vertex = max((w.vertex for w in mine), key=path.position)
            partner = min(
                w.second if w.first == index else w.first for w in mine if w.vertex == vertex
            )
            return index, vertex, partner
        raise InternalInvariantError("positive potential without a witness")
