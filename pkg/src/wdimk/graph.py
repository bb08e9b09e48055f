"""Graph construction: Hamming products, hypercubes, and plain edge lists.

Vertices are dense integer ids. For a Hamming graph K_{n1} x ... x K_{nr} the id
of a coordinate tuple is its row-major (mixed radix) index, so in K_n x K_m the
vertex (i, j) has id ``i*m + j``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import (
    DimensionTooSmall,
    Disconnected,
    IndexOutOfRange,
    NotTwoDimensionalHamming,
    ParseError,
    SameVertex,
    SelfLoop,
    TooLarge,
)

VERTEX_CAP = 4096


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable connected graph with a dense hop-count distance matrix."""

    vertex_count: int
    edges: tuple  # sorted (u, v) pairs with u < v
    dist: np.ndarray = field(repr=False)
    kind: str = "general"  # "hamming", "hypercube" or "general"
    dims: tuple | None = None

    def __post_init__(self):
        self.dist.setflags(write=False)

    @property
    def key(self):
        if self.kind == "general":
            return ("general", self.vertex_count, self.edges)
        return (self.kind, self.dims)

    @property
    def is_hamming(self):
        return self.kind in ("hamming", "hypercube")

    @property
    def is_2d(self):
        return self.is_hamming and len(self.dims) == 2

    @property
    def diameter(self):
        return int(self.dist.max())

    def neighbors(self, v):
        return np.flatnonzero(self.dist[v] == 1)

    def adjacent(self, u, v):
        return self.dist[u, v] == 1

    def coords(self, v):
        """Coordinate tuple of vertex ``v`` (Hamming graphs only)."""
        if not self.is_hamming:
            raise NotTwoDimensionalHamming("coordinates only exist for Hamming graphs")
        self._check(v)
        return tuple(int(c) for c in np.unravel_index(v, self.dims))

    def index(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if not self.is_hamming:
            raise NotTwoDimensionalHamming("coordinates only exist for Hamming graphs")
        if len(coords) != len(self.dims) or any(not 0 <= c < d for c, d in zip(coords, self.dims)):
            raise IndexOutOfRange(f"{coords} is not a vertex of {self.describe()}")
        return int(np.ravel_multi_index(coords, self.dims))

    def label(self, v):
        """JSON-friendly rendering of a vertex: coordinates for Hamming graphs, else the id."""
        return list(self.coords(v)) if self.is_hamming else int(v)

    def describe(self):
        if self.kind == "hypercube":
            return f"Q_{len(self.dims)}"
        if self.kind == "hamming":
            return "x".join(f"K_{d}" for d in self.dims)
        return f"graph(n={self.vertex_count}, edges={len(self.edges)})"

    def spec(self):
        if self.kind == "general":
            return {"kind": "general", "n": self.vertex_count, "edges": len(self.edges)}
        return {"kind": self.kind, "dims": list(self.dims)}

    def _check(self, v):
        if not 0 <= v < self.vertex_count:
            raise IndexOutOfRange(f"vertex {v} out of range [0, {self.vertex_count})")


def _hamming_distances(dims):
    coords = np.array(list(product(*(range(d) for d in dims))), dtype=np.int16)
    dist = np.zeros((len(coords), len(coords)), dtype=np.uint16)
    for c in range(len(dims)):
        col = coords[:, c]
        dist += col[:, None] != col[None, :]
    return dist


def make_hamming(dims, vertex_cap=VERTEX_CAP, kind="hamming"):
    """Cartesian product of complete graphs K_{d} for d in ``dims``.

    Distances are counted coordinate differences; edges are the pairs at
    distance one, which is exactly the Cartesian-product adjacency rule
    applied to cliques.
    """
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise DimensionTooSmall("at least one factor is required")
    if any(d < 2 for d in dims):
        raise DimensionTooSmall(f"every factor needs at least 2 vertices, got {list(dims)}")
    n = math.prod(dims)
    if n > vertex_cap:
        raise TooLarge(f"{n} vertices exceeds the cap of {vertex_cap}")
    dist = _hamming_distances(dims)
    us, vs = np.nonzero(np.triu(dist == 1))
    edges = tuple(zip(us.tolist(), vs.tolist()))
    return Graph(n, edges, dist, kind, dims)


def make_hypercube(r, vertex_cap=VERTEX_CAP):
    if r < 1:
        raise DimensionTooSmall("hypercube dimension must be at least 1")
    return make_hamming([2] * r, vertex_cap=vertex_cap, kind="hypercube")


def bfs_distances(n, edges):
    """All-pairs hop counts by BFS; unreachable pairs come back as -1."""
    if not edges:
        d = np.full((n, n), -1, dtype=np.int64)
        np.fill_diagonal(d, 0)
        return d
    u, v = np.array(edges).T
    adj = csr_matrix((np.ones(len(u)), (u, v)), shape=(n, n))
    d = shortest_path(adj, directed=False, unweighted=True)
    d[np.isinf(d)] = -1
    return d.astype(np.int64)


def make_from_edges(n, edges, vertex_cap=VERTEX_CAP):
    if n < 1:
        raise DimensionTooSmall("graph needs at least one vertex")
    if n > vertex_cap:
        raise TooLarge(f"{n} vertices exceeds the cap of {vertex_cap}")
    clean = set()
    for a, b in edges:
        a, b = int(a), int(b)
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"edge ({a}, {b}) has an endpoint outside [0, {n})")
        if a == b:
            raise SelfLoop(f"self-loop at vertex {a}")
        clean.add((min(a, b), max(a, b)))
    edges = tuple(sorted(clean))
    d = bfs_distances(n, edges)
    if (d < 0).any():
        raise Disconnected("graph is not connected")
    return Graph(n, edges, d.astype(np.uint16), "general", None)


def read_edge_list(path):
    """Parse the edge-list format: header "n m", then one "u v" per line, '#' comments."""
    rows = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"expected two integers, got {line!r}", lineno)
            try:
                rows.append((lineno, int(parts[0]), int(parts[1])))
            except ValueError:
                raise ParseError(f"non-integer token in {line!r}", lineno) from None
    if not rows:
        raise ParseError("empty edge-list file")
    _, n, m = rows[0]
    edges = [(a, b) for _, a, b in rows[1:]]
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges but {len(edges)} were found", rows[0][0])
    return make_from_edges(n, edges)


def write_edge_list(g, path):
    with open(path, "w") as fh:
        fh.write(f"{g.vertex_count} {len(g.edges)}\n")
        for a, b in g.edges:
            fh.write(f"{a} {b}\n")


@dataclass(frozen=True)
class Layer:
    orientation: str  # "vertical" (fixed first coordinate) or "horizontal"
    fixed_index: int
    members: tuple


def _require_2d(g):
    if not g.is_2d:
        raise NotTwoDimensionalHamming(f"{g.describe()} is not of the form K_n x K_m")
    return g.dims


def layers(g):
    """The n vertical layers {i} x Z_m followed by the m horizontal layers Z_n x {j}."""
    n, m = _require_2d(g)
    out = [Layer("vertical", i, tuple(range(i * m, i * m + m))) for i in range(n)]
    out += [Layer("horizontal", j, tuple(range(j, n * m, m))) for j in range(m)]
    return out


def aligned(g, u, v):
    """True when u and v agree in exactly one coordinate (i.e. they are adjacent)."""
    n, m = _require_2d(g)
    g._check(u)
    g._check(v)
    if u == v:
        raise SameVertex("alignment is defined for distinct vertices")
    (iu, ju), (iv, jv) = divmod(u, m), divmod(v, m)
    return (iu == iv) != (ju == jv)
