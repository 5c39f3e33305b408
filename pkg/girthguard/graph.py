"""Simple undirected graphs, the edge-list format and structural queries."""

from __future__ import annotations

import functools
import io
import logging
from collections import deque
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from pydantic import BaseModel, ConfigDict

from girthguard.utils import PreconditionError

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Edge-list text that does not follow the file format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Edges are stored as sorted pairs ``(u, v)`` with ``u < v``; adjacency lists are
    sorted ascending so every traversal order is deterministic.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")

        normalized: set[Edge] = set()
        for edge in edges:
            u, v = int(edge[0]), int(edge[1])
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            pair = (u, v) if u < v else (v, u)
            if pair in normalized:
                raise ValueError(f"duplicate edge {pair[0]}-{pair[1]}")
            normalized.add(pair)

        neighbors: list[list[int]] = [[] for _ in range(n)]
        for u, v in normalized:
            neighbors[u].append(v)
            neighbors[v].append(u)

        self._n = n
        self._edges = tuple(sorted(normalized))
        self._edge_set = frozenset(normalized)
        self._adjacency = tuple(tuple(sorted(adj)) for adj in neighbors)

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        """Edges in lexicographic order, smaller endpoint first."""
        return self._edges

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adjacency

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def degrees(self) -> list[int]:
        return [len(adj) for adj in self._adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        pair = (u, v) if u < v else (v, u)
        return pair in self._edge_set

    def check_vertex(self, v: int) -> None:
        """Raise ``PreconditionError`` if ``v`` is not a vertex id of this graph."""
        if not 0 <= v < self._n:
            raise PreconditionError(f"vertex id {v} outside [0, {self._n})")

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Open neighbourhoods as integer bitmasks."""
        masks = []
        for adj in self._adjacency:
            mask = 0
            for w in adj:
                mask |= 1 << w
            masks.append(mask)
        return tuple(masks)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        """Closed neighbourhoods ``N[v]`` as integer bitmasks."""
        return tuple(mask | (1 << v) for v, mask in enumerate(self.neighbor_masks))

    @property
    def full_mask(self) -> int:
        return (1 << self._n) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m})"


@functools.total_ordering
class Girth:
    """Length of a shortest cycle, or ``Acyclic`` for forests.

    ``Acyclic`` compares greater than every finite girth so that "girth at least g"
    holds vacuously for forests.
    """

    __slots__ = ("_value",)

    def __init__(self, value: int | None):
        if value is not None and value < 3:
            raise ValueError(f"finite girth must be at least 3, got {value}")
        self._value = value

    @classmethod
    def acyclic(cls) -> Girth:
        return cls(None)

    @property
    def value(self) -> int | None:
        return self._value

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    def at_least(self, g: int) -> bool:
        return self._value is None or self._value >= g

    def _key(self) -> float:
        return float("inf") if self._value is None else float(self._value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Girth):
            return self._value == other._value
        if isinstance(other, int):
            return self._value == other
        return NotImplemented

    def __lt__(self, other: object) -> bool:
        if isinstance(other, Girth):
            return self._key() < other._key()
        if isinstance(other, int):
            return self._key() < other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._value)

    def __str__(self) -> str:
        return "acyclic" if self._value is None else str(self._value)

    def __repr__(self) -> str:
        return f"Girth({self})"

    def to_json(self) -> int | str:
        return "acyclic" if self._value is None else self._value


class StructureSummary(BaseModel):
    """Degree extremes and connectivity facts of a graph."""

    model_config = ConfigDict(frozen=True)

    n: int
    m: int
    min_degree: int
    max_degree: int
    connected: bool
    has_universal_vertex: bool
    is_star: bool


def parse_edge_list(text: str | TextIO) -> Graph:
    """Parse the edge-list format.

    Line 1 is ``"<n> <m>"``; then exactly ``m`` lines ``"<u> <v>"``. Lines starting
    with ``#`` are comments and blank lines are skipped.

    Raises:
        GraphFormatError: malformed header or data line, endpoint out of range,
            self-loop, duplicate edge, or an edge count that disagrees with the header.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text

    header: tuple[int, int] | None = None
    seen: set[Edge] = set()
    edges: list[Edge] = []

    for line_num, raw in enumerate(stream, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphFormatError(
                    f"expected header '<n> <m>', got '{line}'", line_num
                )
            header = _parse_ints(parts, line_num)
            continue

        n, m = header
        if len(parts) != 2:
            raise GraphFormatError(f"expected edge '<u> <v>', got '{line}'", line_num)
        u, v = _parse_ints(parts, line_num)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(
                f"endpoint out of range in '{line}' (n={n})", line_num
            )
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", line_num)
        pair = (u, v) if u < v else (v, u)
        if pair in seen:
            raise GraphFormatError(f"duplicate edge {pair[0]}-{pair[1]}", line_num)
        if len(edges) == m:
            raise GraphFormatError(f"more than the {m} edges declared", line_num)
        seen.add(pair)
        edges.append(pair)

    if header is None:
        raise GraphFormatError("missing header line '<n> <m>'")
    if len(edges) != header[1]:
        raise GraphFormatError(
            f"header declares {header[1]} edges but {len(edges)} were found"
        )
    return Graph(header[0], edges)


def _parse_ints(parts: list[str], line_num: int) -> tuple[int, int]:
    # ASCII decimal digits only
    if not all(part.isascii() and part.isdigit() for part in parts):
        raise GraphFormatError(
            f"expected two integers (decimal digits only), got '{' '.join(parts)}'",
            line_num,
        )
    return int(parts[0]), int(parts[1])


def emit_edge_list(g: Graph) -> str:
    """Canonical edge-list text: header, then sorted edges, trailing newline."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: Path | str) -> Graph:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Graph file not found: {path}")
    if path.is_dir():
        raise GraphFormatError(f"expected a graph file, got a directory: {path}")
    with path.open("r", encoding="utf-8") as file:
        return parse_edge_list(file)


def write_graph(g: Graph, path: Path | str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(emit_edge_list(g), encoding="utf-8")


def breadth_first_distances(
    adjacency: Sequence[Sequence[int]], source: int
) -> list[int | None]:
    """Hop distances from ``source`` over raw adjacency lists (``None`` = unreachable)."""
    dist: list[int | None] = [None] * len(adjacency)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for w in adjacency[u]:
            if dist[w] is None:
                dist[w] = du + 1
                queue.append(w)
    return dist


def distances_from(g: Graph, source: int) -> list[int | None]:
    """Unweighted shortest-path distances from ``source``; ``None`` marks unreachable."""
    g.check_vertex(source)
    return breadth_first_distances(g.adjacency, source)


def girth(g: Graph) -> Girth:
    """Exact girth by breadth-first search from every root.

    For each root, every non-tree edge ``(u, w)`` closes a closed walk of length
    ``dist[u] + dist[w] + 1`` that contains a cycle no longer than that; the minimum
    over all roots is the girth. A root's search stops once no shorter cycle can appear.
    """
    best: int | None = None
    adjacency = g.adjacency

    for root in g.vertices():
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in adjacency[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length

    return Girth(best)


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return all(d is not None for d in breadth_first_distances(g.adjacency, 0))


def structure_summary(g: Graph) -> StructureSummary:
    """Degree extremes, connectivity and the universal-vertex / star checks."""
    degrees = g.degrees()
    connected = is_connected(g)
    max_degree = max(degrees, default=0)
    has_universal = g.n > 0 and max_degree == g.n - 1
    return StructureSummary(
        n=g.n,
        m=g.m,
        min_degree=min(degrees, default=0),
        max_degree=max_degree,
        connected=connected,
        has_universal_vertex=has_universal,
        is_star=connected and has_universal and g.m == g.n - 1,
    )
