"""Text codec for the multigraph interchange format.

Line 1 is ``n m``; then ``m`` lines ``u v`` with ``0 <= u, v < n``, one
line per edge copy. ``#`` starts a comment and blank lines are ignored.
"""

from pathlib import Path as FilePath
from typing import Iterator, List, Optional, Tuple, Union

from ..core.exceptions import GraphDomainError, GraphFormatError
from ..models.embedding import RotationSystem
from ..models.fan import PathFan
from ..models.graph import MultiGraph, Path


def content_lines(text: str) -> Iterator[Tuple[int, str]]:
    """Yield ``(line_number, stripped_text)`` with comments and blanks removed."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def parse_ints(line: str, number: int, expected: int = -1) -> List[int]:
    try:
        values = [int(token) for token in line.split()]
    except ValueError:
        raise GraphFormatError(f"expected integers, got {line!r}", number) from None
    if expected >= 0 and len(values) != expected:
        raise GraphFormatError(f"expected {expected} integers, got {len(values)}", number)
    return values


def parse_graph(text: str) -> MultiGraph:
    """Parse the interchange format; edge ids follow line order."""
    lines = list(content_lines(text))
    if not lines:
        raise GraphFormatError("empty graph text")
    header_number, header = lines[0]
    n, m = parse_ints(header, header_number, 2)
    if n < 0 or m < 0:
        raise GraphFormatError("negative counts in header", header_number)
    if len(lines) - 1 != m:
        last = lines[-1][0]
        raise GraphFormatError(f"header announces {m} edges, found {len(lines) - 1}", last)

    pairs = []
    for number, line in lines[1:]:
        u, v = parse_ints(line, number, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1}", number)
        if u == v:
            raise GraphFormatError(f"loop at vertex {u}", number)
        pairs.append((min(u, v), max(u, v)))
    return MultiGraph.from_edge_list(pairs, range(n))


def dump_graph(graph: MultiGraph) -> str:
    """Serialise with vertices renumbered 0..n-1 by ascending id, edges sorted."""
    index = {vertex: position for position, vertex in enumerate(sorted(graph.vertices))}
    pairs = sorted(
        tuple(sorted((index[u], index[v]))) for u, v in graph.edges.values()
    )
    lines = [f"{graph.order} {graph.size}"]
    lines.extend(f"{u} {v}" for u, v in pairs)
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, FilePath]) -> MultiGraph:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_graph(handle.read())


def write_graph(path: Union[str, FilePath], graph: MultiGraph) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dump_graph(graph))


def dump_rotation(rs: RotationSystem) -> str:
    """One ``v: e1 e2 ...`` line per vertex, edges in cyclic order."""
    lines = [f"{vertex}: " + " ".join(str(e) for e in order) for vertex, order in sorted(rs.rotation.items())]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_rotation(text: str, graph: MultiGraph) -> RotationSystem:
    rotation = {}
    for number, line in content_lines(text):
        head, _, tail = line.partition(":")
        vertex = parse_ints(head, number, 1)[0]
        if vertex in rotation:
            raise GraphFormatError(f"vertex {vertex} listed twice", number)
        rotation[vertex] = tuple(parse_ints(tail, number))
    rs = RotationSystem(graph, rotation)
    if not rs.is_consistent():
        raise GraphFormatError("rotation does not list each incident edge once per vertex")
    return rs


def dump_fan(fan: PathFan) -> str:
    """``root``, ``terminals`` and one ``path`` line of edge ids per terminal."""
    lines = [f"root {fan.root}", "terminals " + " ".join(str(t) for t in fan.terminals)]
    lines.extend("path " + " ".join(str(e) for e in path.edges) for path in fan.paths)
    return "\n".join(line.rstrip() for line in lines) + "\n"


def parse_fan(text: str, host: MultiGraph, rs: Optional[RotationSystem] = None) -> PathFan:
    root: Optional[int] = None
    terminals: Tuple[int, ...] = ()
    paths = []
    for number, line in content_lines(text):
        keyword, _, rest = line.partition(" ")
        if keyword == "root":
            root = parse_ints(rest, number, 1)[0]
        elif keyword == "terminals":
            terminals = tuple(parse_ints(rest, number))
        elif keyword == "path":
            if root is None:
                raise GraphFormatError("path before root", number)
            try:
                paths.append(Path.from_edges(host, root, parse_ints(rest, number)))
            except GraphDomainError as e:
                raise GraphFormatError(str(e), number) from None
        else:
            raise GraphFormatError(f"unknown fan keyword {keyword!r}", number)
    if root is None:
        raise GraphFormatError("fan text has no root line")
    fan = PathFan(root, terminals, tuple(paths), host, rs)
    problems = fan.problems()
    if problems:
        raise GraphFormatError("; ".join(problems))
    return fan
