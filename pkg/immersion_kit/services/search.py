"""Isomorph-free enumeration of small connected graphs and the width/immersion search."""

import logging
from collections import Counter
from itertools import combinations
from pathlib import Path as FilePath
from typing import Iterator, List, Optional, Tuple

import networkx as nx
from joblib import Parallel, delayed

from ..config import Settings, settings as default_settings
from ..core.exceptions import GraphDomainError, GraphFormatError
from ..core.guards import enforce_guard
from ..core.logging import analysis_logger
from ..models.graph import MultiGraph
from ..models.search import SearchCriteria, SearchReport, SearchResult
from .branchwidth import BranchwidthService
from .certificate import dump_witness
from .graph_io import content_lines, dump_graph
from .isomorphism import automorphism_orbits, canonical_form, canonical_graph, canonical_labelling
from .relations import RelationsService

logger = logging.getLogger(__name__)

REPORT_HEADER = "immersion-kit-search v1"

# graphs of this order root the subtrees handed to workers
SHARD_ORDER = 4


def _accepts(child: MultiGraph, new_vertex: int) -> bool:
    """Canonical-deletion test: the new vertex is in the orbit of the canonical deletion vertex.

    Deletion candidates are the non-cut vertices of least degree; the
    canonical one comes last in the canonical labelling.
    """
    cut_vertices = set(nx.articulation_points(child.to_simple_networkx()))
    candidates = [v for v in child.vertices if v not in cut_vertices]
    least = min(child.degree(v) for v in candidates)
    if child.degree(new_vertex) != least:
        return False
    candidates = [v for v in candidates if child.degree(v) == least]
    if len(candidates) == 1:
        return True
    _, order = canonical_labelling(child)
    chosen = max(candidates, key=order.index)
    if chosen == new_vertex:
        return True
    orbits = automorphism_orbits(child)
    return orbits[chosen] == orbits[new_vertex]


def augment(parent: MultiGraph, max_edges: Optional[int] = None) -> List[MultiGraph]:
    """Canonical children of ``parent`` (vertices 0..n-1) with one more vertex."""
    n = parent.order
    widest = n if max_edges is None else min(n, max_edges - parent.size)
    base = list(parent.edges.values())
    seen = set()
    children = []
    for size in range(1, widest + 1):
        for neighbours in combinations(range(n), size):
            child = MultiGraph.from_edge_list(base + [(u, n) for u in neighbours], range(n + 1))
            if not _accepts(child, n):
                continue
            form = canonical_form(child)
            if form in seen:
                continue
            seen.add(form)
            children.append(canonical_graph(child))
    return children


def connected_graphs(max_n: int, max_edges: Optional[int] = None) -> Iterator[Tuple[int, List[MultiGraph]]]:
    """Yield ``(n, graphs)`` for n = 1..max_n, one representative per isomorphism class.

    With ``max_edges`` only graphs of at most that many edges are generated;
    edge counts only grow along the augmentation tree.
    """
    if max_n < 1:
        return
    level = [MultiGraph.from_edge_list([], range(1))]
    yield 1, level
    for n in range(2, max_n + 1):
        level = [child for parent in level for child in augment(parent, max_edges)]
        yield n, level


def descendants(root: MultiGraph, max_n: int) -> Iterator[MultiGraph]:
    """Graphs below ``root`` in the augmentation tree, up to ``max_n`` vertices."""
    level = [root]
    while level and level[0].order < max_n:
        level = [child for parent in level for child in augment(parent)]
        yield from level


def _search_shard(settings: Settings, criteria: SearchCriteria,
                  root: MultiGraph) -> Tuple[Counter, List[SearchResult]]:
    service = SearchService(settings)
    generated: Counter = Counter()
    results: List[SearchResult] = []
    for graph in descendants(root, criteria.max_n):
        generated[graph.order] += 1
        result = service._evaluate(graph, criteria)
        if result is not None:
            results.append(result)
    return generated, results


def result_graph(result: SearchResult) -> MultiGraph:
    return MultiGraph.from_edge_list(result.edges, range(result.vertex_count))


class SearchService:
    """Small-graph search for non-sub-cubic graphs of given branch-width."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or default_settings
        self.relations = RelationsService(self.settings)
        self.branchwidth = BranchwidthService(self.settings)

    def width_interval(self, graph: MultiGraph) -> Tuple[int, int]:
        """Lower and upper branch-width bounds, closed by exact search when small enough.

        On simple graphs within the minor guard the lower bound is exact up
        to 3, so an interval with ``lower <= 3 < upper`` collapses to ``lower``.
        """
        upper, _ = self.branchwidth.branchwidth_upper(graph)
        lower = self.branchwidth.branchwidth_lower(graph, ceiling=upper)
        if lower < upper and graph.size <= self.settings.branchwidth_exact_max_edges:
            exact, _ = self.branchwidth.branchwidth_exact(graph)
            return exact, exact
        if (lower <= 3 < upper and graph.is_simple()
                and graph.order <= self.settings.minor_max_host_vertices):
            return lower, lower
        return lower, upper

    def search(self, criteria: SearchCriteria, witness_dir: Optional[FilePath] = None,
               guard_override: bool = False, jobs: Optional[int] = None) -> SearchReport:
        """Filters run cheapest first: degree, width lower bound, immersion-freeness, width.

        Graphs on more than ``SHARD_ORDER`` vertices are searched subtree by
        subtree, one joblib task per graph on ``SHARD_ORDER`` vertices. The
        report does not depend on ``jobs``.
        """
        enforce_guard("search_max_vertices", self.settings.search_max_vertices, criteria.max_n, guard_override)
        jobs = self.settings.search_jobs if jobs is None else jobs
        if jobs < 1:
            raise GraphDomainError(f"jobs must be at least 1, got {jobs}")

        generated: Counter = Counter()
        results: List[SearchResult] = []
        roots: List[MultiGraph] = []
        for n, graphs in connected_graphs(min(criteria.max_n, SHARD_ORDER)):
            generated[n] = len(graphs)
            results.extend(r for r in (self._evaluate(graph, criteria) for graph in graphs) if r is not None)
            roots = graphs
        if criteria.max_n > SHARD_ORDER:
            shards = Parallel(n_jobs=jobs)(
                delayed(_search_shard)(self.settings, criteria, root) for root in roots
            )
            for counts, found in shards:
                generated.update(counts)
                results.extend(found)
        results.sort(key=lambda r: (r.vertex_count, len(r.edges), r.edges))

        report = SearchReport(
            criteria=criteria,
            generated=[generated[n] for n in range(1, criteria.max_n + 1)],
            results=results,
        )
        for n in range(1, criteria.max_n + 1):
            analysis_logger.log_search_progress(n, generated[n], sum(1 for r in results if r.vertex_count == n))
        if witness_dir is not None:
            for index, result in enumerate(report.results):
                if not result.immersion_free:
                    result.witness_path = str(self._write_witness(witness_dir, result_graph(result), index))
        return report

    def _evaluate(self, graph: MultiGraph, criteria: SearchCriteria) -> Optional[SearchResult]:
        if criteria.non_subcubic and graph.is_subcubic():
            return None
        # the lower bound is exact up to 4 on simple graphs
        if 0 < criteria.bw_at_least <= 4:
            if self.branchwidth.branchwidth_lower(graph, ceiling=criteria.bw_at_least) < criteria.bw_at_least:
                return None
        verdict = self.relations.is_kuratowski_immersion_free(graph)
        if criteria.immersion_free_only and not verdict.free:
            return None
        lower, upper = self.width_interval(graph)
        if lower < criteria.bw_at_least:
            if upper >= criteria.bw_at_least:
                logger.debug(f"width of {graph!r} undecided in [{lower}, {upper}]; not reported")
            return None
        return SearchResult(
            edges=sorted(graph.edges.values()),
            vertex_count=graph.order,
            branchwidth=lower,
            branchwidth_exact=lower == upper,
            branchwidth_upper=upper,
            max_degree=graph.max_degree,
            immersion_free=verdict.free,
            witness_pattern=verdict.pattern,
        )

    def _write_witness(self, witness_dir: FilePath, graph: MultiGraph, index: int) -> FilePath:
        witness_dir = FilePath(witness_dir)
        witness_dir.mkdir(parents=True, exist_ok=True)
        verdict = self.relations.is_kuratowski_immersion_free(graph)
        path = witness_dir / f"{graph.order}-{index:05d}.witness"
        path.write_text(dump_graph(graph) + f"# {verdict.pattern}\n" + dump_witness(verdict.witness),
                        encoding="utf-8")
        return path

    def reverify(self, result: SearchResult) -> List[str]:
        """Recompute every recorded attribute of ``result``."""
        problems: List[str] = []
        graph = result_graph(result)
        if not graph.is_simple():
            problems.append("graph is not simple")
        if graph.order > 1 and not nx.is_connected(graph.to_simple_networkx()):
            problems.append("graph is not connected")
        if graph.max_degree != result.max_degree:
            problems.append(f"max degree is {graph.max_degree}, recorded {result.max_degree}")
        lower, upper = self.width_interval(graph)
        if result.branchwidth_exact and not lower == upper == result.branchwidth:
            problems.append(f"branch-width lies in [{lower}, {upper}], recorded {result.branchwidth}")
        if not result.branchwidth_exact and not lower >= result.branchwidth:
            problems.append(f"branch-width lower bound is {lower}, recorded {result.branchwidth}")
        verdict = self.relations.is_kuratowski_immersion_free(graph)
        if verdict.free != result.immersion_free:
            problems.append(f"immersion-free is {verdict.free}, recorded {result.immersion_free}")
        return problems


def _flag(value: bool) -> str:
    return "true" if value else "false"


def dump_search_report(report: SearchReport) -> str:
    criteria = report.criteria
    lines = [
        REPORT_HEADER,
        f"criteria max_n={criteria.max_n} bw_at_least={criteria.bw_at_least} "
        f"non_subcubic={_flag(criteria.non_subcubic)} immersion_free_only={_flag(criteria.immersion_free_only)}",
        "generated " + " ".join(str(count) for count in report.generated),
        f"results {len(report.results)}",
    ]
    for result in report.results:
        lines.append(
            f"graph n={result.vertex_count} m={len(result.edges)} bw={result.branchwidth} "
            f"exact={_flag(result.branchwidth_exact)} upper={result.branchwidth_upper} "
            f"maxdeg={result.max_degree} free={_flag(result.immersion_free)} "
            f"pattern={result.witness_pattern or '-'} witness={result.witness_path or '-'}"
        )
        lines.append(("edges " + " ".join(f"{u}-{v}" for u, v in result.edges)).rstrip())
    return "\n".join(lines) + "\n"


def _fields(tokens: List[str], number: int) -> dict:
    fields = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep:
            raise GraphFormatError(f"expected key=value, got {token!r}", number)
        fields[key] = value
    return fields


def parse_search_report(text: str) -> SearchReport:
    lines = list(content_lines(text))
    if not lines or lines[0][1] != REPORT_HEADER:
        raise GraphFormatError(f"missing header {REPORT_HEADER!r}", lines[0][0] if lines else None)
    try:
        number, line = lines[1]
        raw = _fields(line.split()[1:], number)
        criteria = SearchCriteria(
            max_n=int(raw["max_n"]),
            bw_at_least=int(raw["bw_at_least"]),
            non_subcubic=raw["non_subcubic"] == "true",
            immersion_free_only=raw["immersion_free_only"] == "true",
        )
        number, line = lines[2]
        generated = [int(token) for token in line.split()[1:]]
        report = SearchReport(criteria=criteria, generated=generated)
        body = lines[4:]
        for (number, header), (_, edge_line) in zip(body[::2], body[1::2]):
            raw = _fields(header.split()[1:], number)
            edges = [tuple(int(x) for x in token.split("-")) for token in edge_line.split()[1:]]
            report.results.append(SearchResult(
                edges=edges,
                vertex_count=int(raw["n"]),
                branchwidth=int(raw["bw"]),
                branchwidth_exact=raw["exact"] == "true",
                branchwidth_upper=int(raw["upper"]),
                max_degree=int(raw["maxdeg"]),
                immersion_free=raw["free"] == "true",
                witness_pattern=None if raw["pattern"] == "-" else raw["pattern"],
                witness_path=None if raw["witness"] == "-" else raw["witness"],
            ))
    except (IndexError, KeyError, ValueError) as e:
        raise GraphFormatError(f"malformed search report: {e}") from None
    return report
