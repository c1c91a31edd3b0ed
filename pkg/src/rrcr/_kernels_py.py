"""Pure-Python (numpy/scipy) kernel backend.

Each function here has a compiled twin in ``_kernels_cy``; the two backends
must return bitwise-identical results for identical inputs.  Anything that
consumes randomness stays out of the kernels so that the RNG stream does not
depend on the backend.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse


def backend_name() -> str:
    return "python"


def refine_round(indptr: np.ndarray, indices: np.ndarray, colours: np.ndarray):
    """One colour-refinement round with canonical class naming.

    New colour ids are ranks of the keys ``(old colour, sorted neighbour
    colours)`` in lexicographic order, shorter key first on a tie of the
    common prefix.  Returns ``(new_colours, num_classes)``.
    """
    n = colours.shape[0]
    if n == 0:
        return colours.copy(), 0
    deg = np.diff(indptr)
    seg = np.repeat(np.arange(n, dtype=np.int64), deg)
    ncol = colours[indices]
    order = np.lexsort((ncol, seg))
    ncol_sorted = ncol[order]

    width = int(deg.max()) + 1 if indices.size else 1
    mat = np.full((n, width), -1, dtype=np.int32)
    mat[:, 0] = colours
    if indices.size:
        col_pos = np.arange(indices.shape[0], dtype=np.int64) - np.repeat(indptr[:-1], deg) + 1
        mat[seg, col_pos] = ncol_sorted

    row_order = np.lexsort(mat.T[::-1])
    rows = mat[row_order]
    is_new = np.empty(n, dtype=bool)
    is_new[0] = True
    if n > 1:
        is_new[1:] = (rows[1:] != rows[:-1]).any(axis=1)
    ranks = np.cumsum(is_new) - 1
    new_colours = np.empty(n, dtype=np.int32)
    new_colours[row_order] = ranks.astype(np.int32)
    return new_colours, int(ranks[-1]) + 1


def _padded_neighbours(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    # Row v holds N(v) padded with v itself; self-padding is harmless for
    # BFS because visited vertices are masked out.
    n = indptr.shape[0] - 1
    deg = np.diff(indptr)
    width = max(int(deg.max()) if n else 0, 1)
    mat = np.tile(np.arange(n, dtype=np.int32)[:, None], (1, width))
    if indices.size:
        seg = np.repeat(np.arange(n, dtype=np.int64), deg)
        col_pos = np.arange(indices.shape[0], dtype=np.int64) - np.repeat(indptr[:-1], deg)
        mat[seg, col_pos] = indices
    return mat


def bfs_distances(indptr: np.ndarray, indices: np.ndarray, sources: np.ndarray) -> np.ndarray:
    """Multi-source BFS distances; -1 for unreachable vertices."""
    n = indptr.shape[0] - 1
    nbr = _padded_neighbours(indptr, indices)
    dist = np.full(n, -1, dtype=np.int32)
    frontier = np.zeros(n, dtype=bool)
    frontier[sources] = True
    dist[sources] = 0
    level = 0
    while frontier.any():
        level += 1
        reach = np.zeros(n, dtype=bool)
        reach[nbr[frontier].ravel()] = True
        nxt = reach & (dist < 0)
        dist[nxt] = level
        frontier = nxt
    return dist


def all_eccentricities(indptr: np.ndarray, indices: np.ndarray):
    """BFS eccentricity of every vertex.

    Returns ``(ecc, connected)``; eccentricities are with respect to the
    reachable set, so ``connected`` must be consulted before reading them as
    global eccentricities.
    """
    n = indptr.shape[0] - 1
    nbr = _padded_neighbours(indptr, indices)
    width = nbr.shape[1]
    ecc = np.zeros(n, dtype=np.int64)
    connected = True
    block = max(1, min(256, (1 << 25) // (n * width + 1)))
    for start in range(0, n, block):
        srcs = np.arange(start, min(start + block, n))
        b = srcs.shape[0]
        visited = np.zeros((n, b), dtype=bool)
        visited[srcs, np.arange(b)] = True
        frontier = visited.copy()
        level = 0
        while True:
            nxt = frontier[nbr].any(axis=1) & ~visited
            if not nxt.any():
                break
            level += 1
            ecc[srcs[nxt.any(axis=0)]] = level
            visited |= nxt
            frontier = nxt
        if visited.sum(axis=0).min() < n:
            connected = False
    return ecc, connected


def triangle_counts(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Per-vertex triangle counts by sorted-adjacency intersection."""
    n = indptr.shape[0] - 1
    if indices.size == 0:
        return np.zeros(n, dtype=np.int64)
    adj = sparse.csr_matrix(
        (np.ones(indices.shape[0], dtype=np.int64), indices, indptr), shape=(n, n)
    )
    paths2 = adj @ adj
    closed = paths2.multiply(adj)
    return np.asarray(closed.sum(axis=1)).ravel().astype(np.int64) // 2


def first_simple_pairing(rows: np.ndarray, n: int) -> int:
    """Index of the first row whose consecutive stub pairs form a simple graph.

    Each row is a permutation of the half-edge multiset; a row fails on any
    self-loop or repeated edge.  Returns -1 when every row fails.
    """
    u = rows[:, 0::2].astype(np.int64)
    v = rows[:, 1::2].astype(np.int64)
    loops = (u == v).any(axis=1)
    keys = np.minimum(u, v) * n + np.maximum(u, v)
    keys.sort(axis=1)
    dups = (keys[:, 1:] == keys[:, :-1]).any(axis=1)
    ok = ~(loops | dups)
    hits = np.flatnonzero(ok)
    return int(hits[0]) if hits.size else -1
