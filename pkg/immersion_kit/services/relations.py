"""Containment tests: immersion, strong immersion, topological minor and minor."""

import logging
import random
from collections import deque
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from ..config import Settings, settings as default_settings
from ..core.exceptions import ModelValidationError
from ..core.guards import enforce_guard
from ..core.logging import analysis_logger
from ..models.graph import MultiGraph, Path
from ..models.immersion import ContainmentMode, ImmersionModel, KuratowskiVerdict, MinorModel
from .generators import complete_bipartite, complete_graph
from .isomorphism import canonical_form, twin_classes
from .validators import validate_immersion_model, validate_minor_model

logger = logging.getLogger(__name__)

K5 = complete_graph(5)
K33 = complete_bipartite(3, 3)

Demand = Tuple[int, int, int]  # (pattern edge id, source, target)


def _dominates(host: MultiGraph, pattern: MultiGraph) -> bool:
    """Sorted host degrees bound sorted pattern degrees position by position."""
    host_degrees = host.degree_sequence()
    return all(p <= g for p, g in zip(pattern.degree_sequence(), host_degrees))


class _ModelSearch:
    """Vertex-map backtracking with greedy then exact path routing."""

    def __init__(self, host: MultiGraph, pattern: MultiGraph, mode: ContainmentMode, restarts: int,
                 seed: int = 0):
        self.host = host
        self.pattern = pattern
        self.mode = mode
        self.restarts = restarts
        self.seed = seed
        self.order = sorted(pattern.vertices, key=lambda h: (-pattern.degree(h), h))
        self.distance: Dict[int, Dict[int, int]] = dict(
            nx.all_pairs_shortest_path_length(host.to_simple_networkx())
        )
        self.previous_twin: Dict[int, Optional[int]] = {}
        position = {h: index for index, h in enumerate(self.order)}
        for members in twin_classes(pattern):
            members = sorted(members, key=position.__getitem__)
            self.previous_twin[members[0]] = None
            for earlier, later in zip(members, members[1:]):
                self.previous_twin[later] = earlier
        self.candidates = {
            h: [g for g in sorted(host.vertices) if host.degree(g) >= pattern.degree(h)]
            for h in self.order
        }
        self.pattern_edges = sorted(pattern.edges)

    def run(self) -> Optional[ImmersionModel]:
        if self.pattern.order > self.host.order or self.pattern.size > self.host.size:
            return None
        if not _dominates(self.host, self.pattern):
            return None
        return self._assign(0, {}, 0)

    def _assign(self, index: int, mapping: Dict[int, int], distance_sum: int) -> Optional[ImmersionModel]:
        if index == len(self.order):
            paths = self._route(mapping)
            if paths is None:
                return None
            return ImmersionModel(dict(mapping), paths, self.mode)

        h = self.order[index]
        used = set(mapping.values())
        twin = self.previous_twin.get(h)
        for g in self.candidates[h]:
            if g in used:
                continue
            if twin is not None and g < mapping[twin]:
                continue
            extra = 0
            reachable = True
            for edge_id in self.pattern.incident_edges(h):
                other = self.pattern.other_end(edge_id, h)
                if other not in mapping:
                    continue
                gap = self.distance[g].get(mapping[other])
                if gap is None:
                    reachable = False
                    break
                extra += gap
            if not reachable or distance_sum + extra > self.host.size:
                continue
            mapping[h] = g
            model = self._assign(index + 1, mapping, distance_sum + extra)
            del mapping[h]
            if model is not None:
                return model
        return None

    # routing

    def _demands(self, mapping: Dict[int, int]) -> List[Demand]:
        demands = []
        for edge_id in self.pattern_edges:
            u, v = self.pattern.endpoints(edge_id)
            demands.append((edge_id, mapping[u], mapping[v]))
        return sorted(demands, key=lambda d: (self.distance[d[1]][d[2]], d[0]))

    def _route(self, mapping: Dict[int, int]) -> Optional[Dict[int, Path]]:
        demands = self._demands(mapping)
        image = frozenset(mapping.values())
        blocked = image if self.mode != ContainmentMode.WEAK else frozenset()

        for attempt in range(max(1, self.restarts)):
            ordered = list(demands)
            if attempt:
                random.Random(self.seed + attempt).shuffle(ordered)
            paths = self._route_greedy(ordered, blocked)
            if paths is not None:
                return paths

        lower = sum(self.distance[s][t] for _, s, t in demands)
        return self._route_exact(demands, 0, frozenset(), blocked, lower, image)

    def _route_greedy(self, demands: List[Demand], blocked: FrozenSet[int]) -> Optional[Dict[int, Path]]:
        used: Set[int] = set()
        interior: Set[int] = set(blocked)
        paths: Dict[int, Path] = {}
        for edge_id, s, t in demands:
            path = self._shortest_path(s, t, used, interior)
            if path is None:
                return None
            paths[edge_id] = path
            used |= path.edge_set
            if self.mode == ContainmentMode.TOPOLOGICAL:
                interior |= set(path.interior)
        return paths

    def _shortest_path(self, s: int, t: int, used, blocked) -> Optional[Path]:
        parent: Dict[int, Tuple[int, int]] = {s: (s, -1)}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for edge_id in self.host.incident_edges(x):
                if edge_id in used:
                    continue
                w = self.host.other_end(edge_id, x)
                if w in parent:
                    continue
                if w != t and w in blocked:
                    continue
                parent[w] = (x, edge_id)
                if w == t:
                    vertices, edges = [t], []
                    while vertices[-1] != s:
                        previous, via = parent[vertices[-1]]
                        edges.append(via)
                        vertices.append(previous)
                    return Path(tuple(reversed(vertices)), tuple(reversed(edges)))
                queue.append(w)
        return None

    def _feasible(self, demands: List[Demand], used: FrozenSet[int], blocked: FrozenSet[int]) -> bool:
        """Reachability and free-degree checks for the demands still open."""
        need: Dict[int, int] = {}
        for _, s, t in demands:
            need[s] = need.get(s, 0) + 1
            need[t] = need.get(t, 0) + 1
        for vertex, count in need.items():
            free = sum(1 for edge_id in self.host.incident_edges(vertex) if edge_id not in used)
            if free < count:
                return False
        for _, s, t in demands:
            if self._shortest_path(s, t, used, blocked) is None:
                return False
        return True

    def _route_exact(
        self,
        demands: List[Demand],
        index: int,
        used: FrozenSet[int],
        blocked: FrozenSet[int],
        lower: int,
        image: FrozenSet[int],
    ) -> Optional[Dict[int, Path]]:
        if index == len(demands):
            return {}
        if not self._feasible(demands[index:], used, blocked):
            return None
        edge_id, s, t = demands[index]
        rest_lower = lower - self.distance[s][t]
        budget = self.host.size - len(used) - rest_lower
        for path in self._simple_paths(s, t, used, blocked, budget):
            next_blocked = blocked
            if self.mode == ContainmentMode.TOPOLOGICAL:
                next_blocked = blocked | frozenset(path.interior)
            result = self._route_exact(demands, index + 1, used | path.edge_set, next_blocked, rest_lower, image)
            if result is not None:
                result[edge_id] = path
                return result
        return None

    def _simple_paths(self, s: int, t: int, used, blocked, budget: int) -> Iterator[Path]:
        """Simple s-t paths of length <= budget, one representative per parallel class."""
        vertices = [s]
        edges: List[int] = []

        def extend() -> Iterator[Path]:
            x = vertices[-1]
            steps: Dict[int, int] = {}
            for edge_id in self.host.incident_edges(x):
                if edge_id in used or edge_id in edges:
                    continue
                w = self.host.other_end(edge_id, x)
                if w not in steps or edge_id < steps[w]:
                    steps[w] = edge_id
            for w in sorted(steps):
                if w in vertices:
                    continue
                if w == t:
                    yield Path(tuple(vertices) + (t,), tuple(edges) + (steps[w],))
                    continue
                if w in blocked:
                    continue
                gap = self.distance[w].get(t)
                if gap is None or len(edges) + 1 + gap > budget:
                    continue
                vertices.append(w)
                edges.append(steps[w])
                yield from extend()
                vertices.pop()
                edges.pop()

        yield from extend()


class _MinorSearch:
    """Branch-set labelling of host vertices with connectivity and adjacency pruning."""

    def __init__(self, host: MultiGraph, pattern: MultiGraph):
        self.host = host
        self.pattern = pattern
        self.labels = sorted(pattern.vertices)
        self.requirements: Dict[Tuple[int, int], int] = dict(pattern.endpoint_multiset())
        self.previous_twin: Dict[int, Optional[int]] = {}
        for members in twin_classes(pattern):
            self.previous_twin[members[0]] = None
            for earlier, later in zip(members, members[1:]):
                self.previous_twin[later] = earlier
        self.neighbours = {v: sorted(host.neighbors(v)) for v in host.vertices}
        self.simple = host.to_simple_networkx()

    def run(self) -> Optional[MinorModel]:
        if not self.labels:
            return MinorModel({}, {})
        simple = self.host.to_simple_networkx()
        pattern_connected = nx.is_connected(self.pattern.to_simple_networkx())
        if pattern_connected:
            for part in sorted(nx.connected_components(simple), key=min):
                sub = self.host.induced_subgraph(part)
                if sub.order < self.pattern.order:
                    continue
                if sub.size - (sub.order - self.pattern.order) < self.pattern.size:
                    continue
                model = self._search(self._bfs_order(simple, [min(part)]), allow_unused=False)
                if model is not None:
                    return model
            return None
        starts = [min(part) for part in nx.connected_components(simple)]
        return self._search(self._bfs_order(simple, sorted(starts)), allow_unused=True)

    @staticmethod
    def _bfs_order(simple: nx.Graph, starts: List[int]) -> List[int]:
        order: List[int] = []
        for start in starts:
            if start in order:
                continue
            order.append(start)
            for _, child in nx.bfs_edges(simple, start, sort_neighbors=sorted):
                order.append(child)
        return order

    def _search(self, order: List[int], allow_unused: bool) -> Optional[MinorModel]:
        assignment: Dict[int, Optional[int]] = {}
        members: Dict[int, Set[int]] = {label: set() for label in self.labels}
        options: List[Optional[int]] = list(self.labels) + ([None] if allow_unused else [])
        scope = set(order)

        def viable() -> bool:
            unused_labels = sum(1 for label in self.labels if not members[label])
            if unused_labels > len(order) - len(assignment):
                return False
            for label in self.labels:
                if not self._closure_ok(members[label], assignment, scope):
                    return False
            closed, both_open, half_open = self._edge_tallies(assignment, scope)
            for (a, b), needed in self.requirements.items():
                potential = closed.get((a, b), 0) + both_open + half_open.get(a, 0) + half_open.get(b, 0)
                if potential < needed:
                    return False
            return True

        def extend(index: int) -> Optional[MinorModel]:
            if index == len(order):
                return self._finish(members)
            vertex = order[index]
            for label in options:
                if label is not None and not members[label]:
                    twin = self.previous_twin.get(label)
                    if twin is not None and not members[twin]:
                        continue
                assignment[vertex] = label
                if label is not None:
                    members[label].add(vertex)
                if viable():
                    model = extend(index + 1)
                    if model is not None:
                        return model
                if label is not None:
                    members[label].discard(vertex)
                del assignment[vertex]
            return None

        return extend(0)

    def _closure_ok(self, branch: Set[int], assignment, scope) -> bool:
        """A disconnected branch set must keep an unassigned neighbour on every piece."""
        if len(branch) <= 1:
            return True
        pieces = list(nx.connected_components(self.simple.subgraph(branch)))
        if len(pieces) == 1:
            return True
        for piece in pieces:
            if not any(
                w in scope and w not in assignment for v in piece for w in self.neighbours[v]
            ):
                return False
        return True

    def _edge_tallies(self, assignment, scope):
        """Upper bounds on the final edge count between every pair of labels.

        Returns edges already joining two labels, edges with two open ends
        (usable by any pair) and edges with one open end per label.
        """
        closed: Dict[Tuple[int, int], int] = {}
        both_open = 0
        half_open: Dict[int, int] = {}
        for u, v in self.host.edges.values():
            if u not in scope:
                continue
            u_open, v_open = u not in assignment, v not in assignment
            if u_open and v_open:
                both_open += 1
            elif u_open or v_open:
                label = assignment[v] if u_open else assignment[u]
                if label is not None:
                    half_open[label] = half_open.get(label, 0) + 1
            else:
                a, b = assignment[u], assignment[v]
                if a is not None and b is not None and a != b:
                    key = (min(a, b), max(a, b))
                    closed[key] = closed.get(key, 0) + 1
        return closed, both_open, half_open

    def _finish(self, members: Dict[int, Set[int]]) -> Optional[MinorModel]:
        for label in self.labels:
            if not members[label] or not nx.is_connected(self.simple.subgraph(members[label])):
                return None
        owner = {v: label for label, branch in members.items() for v in branch}
        edge_assignment: Dict[int, int] = {}
        for (a, b), _ in sorted(self.requirements.items()):
            between = sorted(
                edge_id for edge_id, (u, v) in self.host.edges.items()
                if {owner.get(u), owner.get(v)} == {a, b}
            )
            wanted = sorted(
                edge_id for edge_id, pair in self.pattern.edges.items() if pair == (a, b)
            )
            if len(between) < len(wanted):
                return None
            edge_assignment.update(zip(wanted, between))
        return MinorModel({label: frozenset(branch) for label, branch in members.items()}, edge_assignment)


def has_submultigraph(host: MultiGraph, pattern: MultiGraph) -> bool:
    """Pattern is isomorphic to a subgraph of host, multiplicities included."""
    if pattern.order > host.order or pattern.size > host.size:
        return False
    matcher = GraphMatcher(host.to_simple_networkx(), pattern.to_simple_networkx())
    needed = pattern.endpoint_multiset()
    for mapping in matcher.subgraph_monomorphisms_iter():
        inverse = {h: g for g, h in mapping.items()}
        if all(host.multiplicity(inverse[a], inverse[b]) >= count for (a, b), count in needed.items()):
            return True
    return False


class RelationsService:
    """Containment queries with independently re-validated witnesses."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or default_settings

    def _guard_containment(self, host: MultiGraph, pattern: MultiGraph, override: bool) -> None:
        enforce_guard("immersion_max_host_edges", self.settings.immersion_max_host_edges, host.size, override)
        enforce_guard("immersion_max_pattern_vertices", self.settings.immersion_max_pattern_vertices,
                      pattern.order, override)

    def _search(self, host: MultiGraph, pattern: MultiGraph, mode: ContainmentMode,
                guard_override: bool) -> Optional[ImmersionModel]:
        self._guard_containment(host, pattern, guard_override)
        model = _ModelSearch(host, pattern, mode, self.settings.greedy_routing_restarts,
                             self.settings.default_seed).run()
        if model is not None:
            problems = validate_immersion_model(host, pattern, model, mode)
            if problems:
                logger.error(f"{mode.value} model failed re-validation: {problems}")
                raise ModelValidationError("; ".join(problems))
        analysis_logger.log_containment(mode.value, pattern.order, host.size, model is not None)
        return model

    def contains_immersion(self, host: MultiGraph, pattern: MultiGraph, strong: bool = False,
                           guard_override: bool = False) -> Optional[ImmersionModel]:
        mode = ContainmentMode.STRONG if strong else ContainmentMode.WEAK
        return self._search(host, pattern, mode, guard_override)

    def contains_topological_minor(self, host: MultiGraph, pattern: MultiGraph,
                                   guard_override: bool = False) -> Optional[ImmersionModel]:
        return self._search(host, pattern, ContainmentMode.TOPOLOGICAL, guard_override)

    def contains_minor(self, host: MultiGraph, pattern: MultiGraph,
                       guard_override: bool = False) -> Optional[MinorModel]:
        enforce_guard("minor_max_host_vertices", self.settings.minor_max_host_vertices, host.order, guard_override)
        model = None
        if pattern.order <= host.order:
            model = _MinorSearch(host, pattern).run()
        if model is not None:
            problems = validate_minor_model(host, pattern, model)
            if problems:
                logger.error(f"minor model failed re-validation: {problems}")
                raise ModelValidationError("; ".join(problems))
        analysis_logger.log_containment("minor", pattern.order, host.size, model is not None)
        return model

    def oracle_immersion_by_lifts(self, host: MultiGraph, pattern: MultiGraph,
                                  guard_override: bool = False) -> bool:
        """Search the lift closure of ``host`` for a subgraph isomorphic to ``pattern``."""
        enforce_guard("lift_oracle_max_edges", self.settings.lift_oracle_max_edges, host.size, guard_override)
        if pattern.order > host.order:
            return False
        seen = set()
        stack = [host]
        while stack:
            state = stack.pop()
            if state.size < pattern.size:
                continue
            form = canonical_form(state)
            if form in seen:
                continue
            seen.add(form)
            if has_submultigraph(state, pattern):
                logger.debug(f"lift oracle hit after {len(seen)} states")
                return True
            for x in sorted(state.vertices):
                incident = state.incident_edges(x)
                for i, first in enumerate(incident):
                    for second in incident[i + 1:]:
                        if state.other_end(first, x) == state.other_end(second, x):
                            continue
                        stack.append(state.lift(first, second)[0])
        logger.debug(f"lift oracle exhausted {len(seen)} states")
        return False

    def is_kuratowski_immersion_free(self, host: MultiGraph, guard_override: bool = False) -> KuratowskiVerdict:
        """Neither K5 nor K3,3 is weakly immersed in ``host``."""
        for name, pattern in (("k5", K5), ("k33", K33)):
            model = self.contains_immersion(host, pattern, strong=False, guard_override=guard_override)
            if model is not None:
                return KuratowskiVerdict(False, name, model)
        return KuratowskiVerdict(True)
