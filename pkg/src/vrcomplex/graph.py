"""Immutable undirected graphs on the dense vertex set ``0..n-1``.

Every construction reads adjacency from a :class:`Graph`. The graph keeps
two views of the same edge set:

* a dense boolean edge table, one ``bytearray`` row per vertex, for O(1)
  edge probes;
* per-vertex strictly increasing neighbor tuples, for merge-style
  intersections.

Random graphs come from :func:`erdos_renyi`, which uses numpy's PCG64 bit
generator seeded through ``SeedSequence(seed)``. Unordered pairs ``(u, v)``
with ``u < v`` are visited in lexicographic order and each consumes exactly
one 64-bit raw output ``x``; the pair is an edge iff
``(x >> 11) * 2**-53 < p``. Raw PCG64 output is stable across numpy
releases and platforms, so a ``(n, p, seed)`` triple always names the same
graph.
"""

from __future__ import annotations

import csv
import io
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import ParseError, ValidationError

__all__ = [
    "Graph",
    "PointCloud",
    "build_graph",
    "has_edge",
    "upper_neighbors",
    "erdos_renyi",
    "from_point_cloud",
    "read_edge_list",
    "write_edge_list",
    "read_point_cloud",
]

_MAX_SEED = 2**64


class Graph:
    """Undirected simple graph with a total vertex order.

    Use :func:`build_graph` (or one of the generators) rather than calling
    the constructor directly.
    """

    __slots__ = ("n", "rows", "adjacency", "upper", "largest_neighbor", "_m")

    def __init__(self, n: int, rows: list[bytearray]):
        self.n = n
        self.rows = rows
        adjacency = []
        upper = []
        for u, row in enumerate(rows):
            nbrs = tuple(i for i, bit in enumerate(row) if bit)
            adjacency.append(nbrs)
            upper.append(nbrs[bisect_right(nbrs, u):])
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(adjacency)
        self.upper: tuple[tuple[int, ...], ...] = tuple(upper)
        self.largest_neighbor: tuple[int | None, ...] = tuple(
            a[-1] if a else None for a in adjacency
        )
        self._m = sum(len(a) for a in upper)

    @property
    def edge_count(self) -> int:
        return self._m

    @property
    def edge_table(self) -> np.ndarray:
        """Copy of the edge table as an ``n x n`` boolean array."""
        if self.n == 0:
            return np.zeros((0, 0), dtype=bool)
        return np.array([list(r) for r in self.rows], dtype=bool)

    def has_edge(self, u: int, v: int, counters=None) -> bool:
        _check_vertex(self, u)
        _check_vertex(self, v)
        if counters is not None:
            counters.edge_probes += 1
        return bool(self.rows[u][v])

    def upper_neighbors(self, u: int) -> tuple[int, ...]:
        _check_vertex(self, u)
        return self.upper[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.upper[u]]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.upper)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


def _check_vertex(g: Graph, u: int) -> None:
    if not 0 <= u < g.n:
        raise ValidationError(f"vertex {u} out of range for n={g.n}")


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph on vertices ``0..n-1`` from vertex pairs.

    Duplicate and reversed pairs collapse to a single undirected edge.
    Self-loops and out-of-range endpoints raise :class:`ValidationError`
    naming the offending pair.
    """
    if n < 0:
        raise ValidationError(f"vertex count must be nonnegative, got {n}")
    rows = [bytearray(n) for _ in range(n)]
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"edge ({u}, {v}): vertex out of range for n={n}")
        if u == v:
            raise ValidationError(f"edge ({u}, {v}): self-loop")
        rows[u][v] = 1
        rows[v][u] = 1
    return Graph(n, rows)


def _from_table(table: np.ndarray) -> Graph:
    n = table.shape[0]
    rows = [bytearray(table[u].astype(np.uint8).tobytes()) for u in range(n)]
    return Graph(n, rows)


def has_edge(g: Graph, u: int, v: int, counters=None) -> bool:
    """Constant-time edge probe; bumps ``counters.edge_probes`` if given."""
    return g.has_edge(u, v, counters)


def upper_neighbors(g: Graph, u: int) -> tuple[int, ...]:
    """Neighbors of ``u`` with a larger label, in increasing order."""
    return g.upper_neighbors(u)


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """Sample G(n, p) deterministically from ``seed`` (see module docstring)."""
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"edge probability must lie in [0, 1], got {p}")
    if n < 0:
        raise ValidationError(f"vertex count must be nonnegative, got {n}")
    if not 0 <= seed < _MAX_SEED:
        raise ValidationError(f"seed must be a 64-bit unsigned integer, got {seed}")
    table = np.zeros((n, n), dtype=bool)
    npairs = n * (n - 1) // 2
    if npairs:
        raw = np.random.PCG64(seed).random_raw(npairs)
        uniform = (raw >> np.uint64(11)).astype(np.float64) * (2.0**-53)
        iu, iv = np.triu_indices(n, 1)
        hit = uniform < p
        table[iu[hit], iv[hit]] = True
        table[iv[hit], iu[hit]] = True
    return _from_table(table)


@dataclass(frozen=True)
class PointCloud:
    """Finite set of points in R^dim, one coordinate tuple per vertex."""

    points: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        dims = {len(p) for p in self.points}
        if len(dims) > 1:
            raise ValidationError(f"points have mixed dimensions {sorted(dims)}")
        if dims and dims.pop() < 1:
            raise ValidationError("points must have at least one coordinate")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[float]]) -> "PointCloud":
        return cls(tuple(tuple(float(x) for x in r) for r in rows))

    def __len__(self) -> int:
        return len(self.points)


def from_point_cloud(pc: PointCloud | Sequence[Sequence[float]], epsilon: float) -> Graph:
    """Threshold graph: ``i ~ j`` iff the Euclidean distance is at most epsilon."""
    if not isinstance(pc, PointCloud):
        pc = PointCloud.from_rows(pc)
    if epsilon < 0:
        raise ValidationError(f"epsilon must be nonnegative, got {epsilon}")
    n = len(pc)
    if n == 0:
        return Graph(0, [])
    pts = np.asarray(pc.points, dtype=np.float64)
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    table = dist <= epsilon
    np.fill_diagonal(table, False)
    return _from_table(table)


def read_edge_list(source: str | TextIO) -> Graph:
    """Parse the edge-list format.

    The first line that is neither blank nor a ``#`` comment holds ``n m``;
    exactly ``m`` lines ``u v`` follow.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    header = None
    edges: list[tuple[int, int]] = []
    expected = 0
    for lineno, line in enumerate(source, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        fields = text.split()
        if len(fields) != 2:
            raise ParseError(f"expected two integers, got {text!r}", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"expected two integers, got {text!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError(f"header values must be nonnegative, got {text!r}", lineno)
            header = (a, b)
            expected = b
            continue
        if len(edges) == expected:
            raise ParseError(f"more than the declared {expected} edges", lineno)
        n = header[0]
        for x in (a, b):
            if not 0 <= x < n:
                raise ParseError(f"vertex {x} out of range for n={n}", lineno)
        if a == b:
            raise ParseError(f"self-loop at vertex {a}", lineno)
        edges.append((a, b))
    if header is None:
        raise ParseError("missing 'n m' header line")
    if len(edges) != expected:
        raise ParseError(f"declared {expected} edges but found {len(edges)}")
    return build_graph(header[0], edges)


def write_edge_list(g: Graph) -> str:
    """Canonical edge-list text: deduplicated ``u < v`` pairs in lexicographic order."""
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def read_point_cloud(source: str | TextIO) -> PointCloud:
    """Parse headerless CSV, one point per line."""
    if isinstance(source, str):
        source = io.StringIO(source)
    rows = []
    for lineno, row in enumerate(csv.reader(source), start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        try:
            rows.append(tuple(float(cell) for cell in row))
        except ValueError:
            raise ParseError(f"non-numeric coordinate in {row!r}", lineno) from None
        if len(rows[-1]) != len(rows[0]):
            raise ParseError(
                f"point has {len(rows[-1])} coordinates, expected {len(rows[0])}", lineno
            )
    return PointCloud(tuple(rows))
