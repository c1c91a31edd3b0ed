"""Immutable simple undirected graphs in compressed adjacency form.

Vertices are dense 0-based integers.  The adjacency is stored once as an
offsets+targets (CSR) pair with each neighbour list strictly increasing;
that layout is the hot path for refinement, BFS and triangle listing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from ._backend import kernels
from .errors import EmptySource, EndpointOutOfRange, GraphFormatError, SelfLoop

__all__ = [
    "Graph",
    "SphereReport",
    "from_edge_list",
    "complement",
    "sphere_sizes",
    "diameter",
    "degree_profile",
    "apply_permutation",
    "read_graph",
    "write_graph",
    "graph_to_text",
    "graph_from_text",
]


class Graph:
    """Simple undirected graph; immutable after construction."""

    __slots__ = ("n", "m", "indptr", "indices")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = int(n)
        self.m = int(indices.shape[0]) // 2
        self.indptr = indptr
        self.indices = indices
        indptr.setflags(write=False)
        indices.setflags(write=False)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbours(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbours(u)
        i = np.searchsorted(row, v)
        return bool(i < row.shape[0] and row[i] == v)

    def edges(self) -> np.ndarray:
        """(m, 2) array of edges with u < v, in lexicographic order."""
        deg = np.diff(self.indptr)
        us = np.repeat(np.arange(self.n, dtype=np.int32), deg)
        mask = us < self.indices
        return np.column_stack((us[mask], self.indices[mask]))

    def regular_degree(self) -> Optional[int]:
        """The common degree when the graph is regular, else None."""
        if self.n == 0:
            return 0
        deg = self.degrees()
        d = int(deg[0])
        return d if bool((deg == d).all()) else None

    def is_regular(self) -> bool:
        return self.regular_degree() is not None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self):
        return hash((self.n, self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class SphereReport:
    """Sizes of the distance spheres around a source set.

    ``sizes[r]`` is the number of vertices at graph distance exactly r from
    the source set; ``exhausted_at`` is the first radius with an empty
    sphere, or None if no empty sphere occurs within the requested range.
    """

    sizes: tuple
    exhausted_at: Optional[int]

    def ball_sizes(self) -> tuple:
        return tuple(np.cumsum(self.sizes))


def _build_csr(n: int, pairs: np.ndarray) -> Graph:
    # pairs: (k, 2) with u < v, deduplicated
    if pairs.size:
        sym = np.concatenate([pairs, pairs[:, ::-1]])
        order = np.lexsort((sym[:, 1], sym[:, 0]))
        sym = sym[order]
        indices = np.ascontiguousarray(sym[:, 1], dtype=np.int32)
        counts = np.bincount(sym[:, 0], minlength=n)
    else:
        indices = np.zeros(0, dtype=np.int32)
        counts = np.zeros(n, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return Graph(n, indptr, indices)


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from unordered vertex pairs.

    Duplicate pairs (in either orientation) are merged; self-loops and
    endpoints outside [0, n) are rejected.
    """
    if isinstance(edges, np.ndarray):
        arr = edges.astype(np.int64, copy=False)
    else:
        arr = np.asarray(list(edges), dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be pairs of vertex ids")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise EndpointOutOfRange(f"edge endpoint outside [0, {n})")
    if arr.size and (arr[:, 0] == arr[:, 1]).any():
        raise SelfLoop("self-loops are not allowed")
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    keys = np.unique(lo * n + hi)
    pairs = np.column_stack((keys // n, keys % n))
    return _build_csr(n, pairs)


def complement(g: Graph) -> Graph:
    """Graph on the same vertices whose edges are exactly the non-edges of g."""
    n = g.n
    rows = []
    all_v = np.arange(n, dtype=np.int64)
    for v in range(n):
        keep = np.ones(n, dtype=bool)
        keep[g.neighbours(v)] = False
        keep[v] = False
        others = all_v[keep]
        rows.append(others[others > v])
    if rows:
        us = np.repeat(np.arange(n, dtype=np.int64), [len(r) for r in rows])
        vs = np.concatenate(rows) if us.size else np.zeros(0, dtype=np.int64)
        pairs = np.column_stack((us, vs))
    else:
        pairs = np.zeros((0, 2), dtype=np.int64)
    return _build_csr(n, pairs)


def sphere_sizes(g: Graph, sources: Iterable[int], r_max: int) -> SphereReport:
    """Sizes of the distance spheres S_0 .. S_{r_max} around a vertex set.

    Computed by multi-source BFS; entries past exhaustion are zero.
    """
    if r_max < 0:
        raise ValueError("r_max must be non-negative")
    src = np.unique(np.asarray(list(sources), dtype=np.int64))
    if src.size == 0:
        raise EmptySource("source set must be non-empty")
    if src.min() < 0 or src.max() >= g.n:
        raise EndpointOutOfRange("source vertex outside [0, n)")
    dist = kernels.bfs_distances(g.indptr, g.indices, src)
    reached = dist[dist >= 0]
    counts = np.bincount(reached, minlength=r_max + 1)[: r_max + 1]
    zeros = np.flatnonzero(counts == 0)
    exhausted = int(zeros[0]) if zeros.size else None
    return SphereReport(sizes=tuple(int(c) for c in counts), exhausted_at=exhausted)


def diameter(g: Graph) -> float:
    """Maximum BFS eccentricity; math.inf when the graph is disconnected."""
    if g.n == 0:
        return 0
    ecc, connected = kernels.all_eccentricities(g.indptr, g.indices)
    if not connected:
        return math.inf
    return int(ecc.max())


def degree_profile(g: Graph, v: int, partition) -> np.ndarray:
    """Number of neighbours of v inside each part of the partition."""
    part_of = partition.part_of()
    if part_of.shape[0] != g.n:
        raise ValueError("partition does not cover the graph's vertex set")
    return np.bincount(part_of[g.neighbours(v)], minlength=len(partition.parts))


def apply_permutation(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabelled copy of g where vertex v becomes perm[v]."""
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape[0] != g.n or np.unique(perm).shape[0] != g.n or (
            g.n and (perm.min() < 0 or perm.max() >= g.n)):
        raise ValueError("perm must be a bijection on [0, n)")
    e = g.edges()
    return from_edge_list(g.n, np.column_stack((perm[e[:, 0]], perm[e[:, 1]])))


# -- text graph format -------------------------------------------------------
#
# Line 1: "n m"; then m lines "u v" with 0 <= u < v < n, ASCII decimal, each
# newline-terminated, edges in lexicographic order.  Lines starting with '#'
# are comments.  write_graph(read_graph(f)) is byte-identical for canonical
# input.


def graph_to_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}\n"]
    for u, v in g.edges():
        lines.append(f"{u} {v}\n")
    return "".join(lines)


def graph_from_text(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise GraphFormatError("missing header line 'n m'")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"bad header line: {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    pairs = []
    for ln in lines[1:]:
        fields = ln.split()
        if len(fields) != 2:
            raise GraphFormatError(f"bad edge line: {ln!r}")
        u, v = int(fields[0]), int(fields[1])
        if not (0 <= u < v < n):
            raise GraphFormatError(f"edge ({u}, {v}) violates 0 <= u < v < n")
        pairs.append((u, v))
    g = from_edge_list(n, pairs)
    if g.m != m:
        raise GraphFormatError("duplicate edges in input")
    return g


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(graph_to_text(g))


def read_graph(path) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        return graph_from_text(fh.read())
