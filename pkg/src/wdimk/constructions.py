"""Explicit weak k-resolving sets of K_n x K_n and the row/column bipartite graph of a set."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import GraphMismatch, OutOfRange
from .resolving import VertexSet, hamming


def _square(n, graph=None):
    g = graph if graph is not None else hamming(n, n)
    if not (g.is_2d and tuple(g.dims) == (n, n)):
        raise GraphMismatch(f"expected K_{n} x K_{n}, got {g.describe()}")
    return g


def diagonal_cells(n, i):
    return [((i + j) % n, j) for j in range(n)]


def construct_diagonal(n, i, graph=None):
    """D_i = {(i+j mod n, j)}; the n diagonals partition the vertex set."""
    if n < 1 or not 0 <= i < n:
        raise OutOfRange(f"diagonal index must lie in [0, {n}), got {i}")
    g = _square(n, graph)
    return VertexSet.of(g, diagonal_cells(n, i))


def construct_xt(n, t, graph=None):
    """Union of the diagonals D_t, ..., D_{n-1}: n - t vertices in every layer.

    Weak (2n - 2t)-resolving with n(n - t) vertices.
    """
    if n < 3 or not 1 <= t <= n - 2:
        raise OutOfRange(f"X_t needs n >= 3 and 1 <= t <= n-2, got n={n}, t={t}")
    return _union_of_diagonals(n, t, graph)


def _union_of_diagonals(n, t, graph=None):
    g = _square(n, graph)
    cells = [c for i in range(t, n) for c in diagonal_cells(n, i)]
    return VertexSet.of(g, cells)


def construct_xt_prime(n, t, graph=None):
    """X_t with the vertex (1, 2) removed; weak (2n - 2t - 1)-resolving."""
    if n < 3 or not 0 <= t <= n - 3:
        raise OutOfRange(f"X'_t needs n >= 3 and 0 <= t <= n-3, got n={n}, t={t}")
    xt = _union_of_diagonals(n, t, graph)
    # (1, 2) sits on D_{n-1}, which every X_t contains
    assert (1, 2) in xt, "(1,2) must belong to X_t"
    return xt.without((1, 2))


def yn_cells(n):
    if n < 6:
        raise OutOfRange(f"Y_n is defined for n >= 6, got {n}")
    s, t = divmod(n, 3)
    if t == 1:
        return yn_cells(n - 1) + [(n - 1, n - 2), (n - 1, n - 1)]
    if t == 2:
        return yn_cells(n - 2) + [(n - 2, n - 2), (n - 2, n - 1), (n - 1, n - 1)]
    cells = []
    for r in range(s):
        a = 3 * r
        cells += [(a, a), (a, a + 1), (a + 1, a + 2), (a + 2, a + 2)]
    return cells


def construct_yn(n, graph=None):
    """Weak 2-resolving set with ceil(4n/3) vertices, built in blocks of three rows."""
    cells = yn_cells(n)
    return VertexSet.of(_square(n, graph), cells)


def construction_for(n, k, graph=None):
    """Best known explicit set for wdim_k(K_n x K_n), or None when there is none.

    k = 3 reuses the k = 4 set (it has the optimal size 2n).
    """
    if n < 3 or not 1 <= k <= 2 * n:
        return None
    if k == 2 * n:
        return VertexSet(_square(n, graph), tuple(range(n * n)))
    if k >= 4 and k % 2 == 0:
        return construct_xt(n, n - k // 2, graph)
    if k >= 5:
        return construct_xt_prime(n, (2 * n - 1 - k) // 2, graph)
    if k == 3:
        return construct_xt(n, n - 2, graph)
    if k == 2 and n >= 6:
        return construct_yn(n, graph)
    return None


@dataclass(frozen=True)
class BipartiteLayerGraph:
    """Rows 0..n-1 on one side, columns 0'..(n-1)' on the other; i -- j' iff (i, j) in the set."""

    n: int
    edges: tuple

    @property
    def edge_count(self):
        return len(self.edges)

    def degree(self, side, idx):
        pos = 0 if side == "row" else 1
        return sum(1 for e in self.edges if e[pos] == idx)

    def isolated(self):
        rows = {i for i, _ in self.edges}
        cols = {j for _, j in self.edges}
        return [("row", i) for i in range(self.n) if i not in rows] + [
            ("col", j) for j in range(self.n) if j not in cols
        ]

    def components(self):
        """Vertex counts of the connected components, largest first."""
        n = self.n
        rows = [i for i, _ in self.edges]
        cols = [n + j for _, j in self.edges]
        adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(2 * n, 2 * n))
        _, labels = connected_components(adj, directed=False)
        return sorted(np.bincount(labels).tolist(), reverse=True)


def build_gy(n, y):
    if isinstance(y, VertexSet):
        g = y.graph
        if not (g.is_2d and tuple(g.dims) == (n, n)):
            raise GraphMismatch(f"set lives in {g.describe()}, not K_{n} x K_{n}")
        cells = y.coords()
    else:
        cells = [tuple(c) for c in y]
        if any(not (0 <= i < n and 0 <= j < n) for i, j in cells):
            raise GraphMismatch(f"cell outside K_{n} x K_{n}")
    return BipartiteLayerGraph(n, tuple(sorted(set(cells))))
