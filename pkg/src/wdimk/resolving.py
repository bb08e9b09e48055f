"""Weak k-resolving sets: Delta sums, certificates, kappa, exact search and closed forms."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    BadDims,
    BudgetExceeded,
    GraphMismatch,
    IndexOutOfRange,
    KExceedsKappa,
    OutOfRange,
)
from .graph import make_hamming

DEFAULT_NODE_BUDGET = 50_000_000


@lru_cache(maxsize=64)
def hamming(*dims):
    """Cached K_{d1} x K_{d2} x ... (graphs are immutable, so sharing is safe)."""
    return make_hamming(dims)


@dataclass(frozen=True)
class VertexSet:
    graph: object = field(repr=False, compare=False)
    members: tuple

    def __post_init__(self):
        ms = tuple(sorted(int(v) for v in self.members))
        if len(set(ms)) != len(ms):
            raise ValueError("duplicate vertices in set")
        if ms and not (0 <= ms[0] and ms[-1] < self.graph.vertex_count):
            raise IndexOutOfRange("set contains a vertex outside the graph")
        object.__setattr__(self, "members", ms)

    @classmethod
    def of(cls, g, items):
        """Build from vertex ids or coordinate tuples."""
        ids = [g.index(x) if isinstance(x, (tuple, list)) else int(x) for x in items]
        return cls(g, tuple(ids))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, v):
        if isinstance(v, (tuple, list)):
            v = self.graph.index(v)
        return v in self.members

    def __eq__(self, other):
        if not isinstance(other, VertexSet):
            return NotImplemented
        return self.members == other.members and self.graph.key == other.graph.key

    def __hash__(self):
        return hash(self.members)

    def coords(self):
        return [self.graph.coords(v) for v in self.members]

    def labels(self):
        return [self.graph.label(v) for v in self.members]

    def union(self, other):
        _same_graph(self.graph, other)
        return VertexSet(self.graph, tuple(set(self.members) | set(other.members)))

    def without(self, *vs):
        drop = {self.graph.index(v) if isinstance(v, (tuple, list)) else v for v in vs}
        return VertexSet(self.graph, tuple(v for v in self.members if v not in drop))


def _same_graph(g, s):
    if s.graph is not g and s.graph.key != g.key:
        raise GraphMismatch(f"set belongs to {s.graph.describe()}, not {g.describe()}")


def _members(g, s):
    if isinstance(s, VertexSet):
        _same_graph(g, s)
        return np.array(s.members, dtype=np.intp)
    return np.asarray(list(s), dtype=np.intp)


def delta_z(g, z, x, y):
    return abs(int(g.dist[x, z]) - int(g.dist[y, z]))


def delta_set(g, s, x, y):
    idx = _members(g, s)
    if idx.size == 0:
        return 0
    d = g.dist[idx].astype(np.int64)
    return int(np.abs(d[:, x] - d[:, y]).sum())


def delta_matrix(g, s, block=1024):
    """Full |V| x |V| matrix of Delta_S(x, y).

    With threshold indicators T_t = [d >= t], |a - b| is the sum over t of
    [a >= t] xor [b >= t], so each threshold costs one matrix multiply.
    """
    idx = _members(g, s)
    nv = g.vertex_count
    out = np.zeros((nv, nv), dtype=np.int64)
    if idx.size == 0:
        return out
    d = g.dist[idx]
    dmax = int(d.max())
    # float32 is exact while partial sums stay below 2**24
    dtype = np.float32 if 2 * idx.size * dmax < 2 ** 24 else np.float64
    thresholds = [(d >= t).astype(dtype) for t in range(1, dmax + 1)]
    if not thresholds:
        return out
    counts = sum(th.sum(axis=0) for th in thresholds)
    for lo in range(0, nv, block):
        hi = min(nv, lo + block)
        acc = counts[lo:hi, None] + counts[None, :]
        for th in thresholds:
            acc -= 2 * (th[:, lo:hi].T @ th)
        out[lo:hi] = np.rint(acc).astype(np.int64)
    return out


@dataclass(frozen=True)
class Certificate:
    k: int
    set: VertexSet
    pair_values: np.ndarray = field(repr=False, compare=False)  # condensed, pairs x<y lexicographic
    min_pair: tuple | None
    min_value: int | None

    @property
    def valid(self):
        return self.min_value is None or self.min_value >= self.k

    def value(self, x, y):
        if x == y:
            return 0
        x, y = min(x, y), max(x, y)
        nv = self.set.graph.vertex_count
        pos = x * nv - x * (x + 1) // 2 + (y - x - 1)
        return int(self.pair_values[pos])

    def to_json(self):
        g = self.set.graph
        return {
            "graph": g.spec(),
            "k": self.k,
            "set": self.set.labels(),
            "size": len(self.set),
            "min_value": self.min_value,
            "min_pair": None if self.min_pair is None else [g.label(v) for v in self.min_pair],
            "valid": self.valid,
        }


def verify(g, s, k):
    """Check the weak k-resolving inequality for every unordered vertex pair."""
    if k < 1:
        raise OutOfRange("k must be a positive integer")
    if not isinstance(s, VertexSet):
        s = VertexSet.of(g, s)
    _same_graph(g, s)
    full = delta_matrix(g, s)
    iu, ju = np.triu_indices(g.vertex_count, 1)
    values = full[iu, ju]
    if values.size == 0:
        return Certificate(k, s, values, None, None)
    p = int(np.argmin(values))
    return Certificate(k, s, values, (int(iu[p]), int(ju[p])), int(values[p]))


def kappa_bruteforce(g):
    """min over vertex pairs of Delta_V(x, y); the largest feasible k."""
    full = delta_matrix(g, range(g.vertex_count))
    iu, ju = np.triu_indices(g.vertex_count, 1)
    return int(full[iu, ju].min())


def kappa_hamming_formula(dims):
    dims = [int(d) for d in dims]
    if len(dims) < 2:
        raise BadDims("need at least two factors")
    if any(d < 2 for d in dims):
        raise BadDims("every factor needs at least 2 vertices")
    if any(a < b for a, b in zip(dims, dims[1:])):
        raise BadDims(f"dims must be sorted nonincreasing, got {dims}")
    return 2 * math.prod(dims[1:])


def kappa(g):
    """kappa via the product formula for Hamming graphs, brute force otherwise."""
    if g.is_hamming:
        dims = sorted(g.dims, reverse=True)
        if len(dims) == 1:
            return 2
        return kappa_hamming_formula(dims)
    return kappa_bruteforce(g)


@dataclass(frozen=True)
class WdimResult:
    k: int
    value: int
    witness: VertexSet | None
    method: str  # formula, brute, ilp_fs, ilp_fs_minus, ilp_fgh
    proved: bool = True
    info: dict = field(default_factory=dict, compare=False)

    def to_json(self, graph=None):
        g = graph if graph is not None else (self.witness.graph if self.witness else None)
        out = {
            "graph": g.spec() if g is not None else None,
            "k": self.k,
            "value": self.value,
            "method": self.method,
            "proved": self.proved,
            "witness": None if self.witness is None else self.witness.labels(),
        }
        out.update({k: v for k, v in self.info.items() if k != "elapsed_ms"})
        return out


def pair_contributions(g):
    """Matrix C[z, p] = Delta_z(x_p, y_p) over the condensed pair list."""
    iu, ju = np.triu_indices(g.vertex_count, 1)
    d = g.dist.astype(np.int16)
    return np.abs(d[:, iu] - d[:, ju])


def wdim_exact_bruteforce(g, k, node_budget=None, exact_bound=False):
    """Smallest weak k-resolving set by exhaustive search.

    Cardinalities are tried in increasing order and subsets in lexicographic
    order, so the witness is the lexicographically least basis. A partial set is
    abandoned once some pair can no longer reach k even if every remaining slot
    added the largest possible contribution (the graph diameter, or the exact
    per-pair maximum over the remaining candidates with ``exact_bound``).
    """
    if k < 1:
        raise OutOfRange("k must be a positive integer")
    kap = kappa_bruteforce(g)
    if k > kap:
        raise KExceedsKappa(f"k={k} exceeds kappa={kap} of {g.describe()}")
    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    nv = g.vertex_count
    contrib = pair_contributions(g).astype(np.int32)
    if exact_bound:
        suffix = np.zeros((nv + 1, contrib.shape[1]), dtype=np.int32)
        for v in range(nv - 1, -1, -1):
            suffix[v] = np.maximum(suffix[v + 1], contrib[v])
    else:
        suffix = None
    uniform = g.diameter
    nodes = 0

    def dfs(start, acc, chosen, left):
        nonlocal nodes
        for v in range(start, nv - left + 1):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"node budget {budget} exhausted")
            cur = acc + contrib[v]
            rem = left - 1
            if rem == 0:
                if cur.min() >= k:
                    return chosen + [v]
                continue
            bound = suffix[v + 1] if suffix is not None else uniform
            if (cur + rem * bound).min() < k:
                continue
            found = dfs(v + 1, cur, chosen + [v], rem)
            if found is not None:
                return found
        return None

    zero = np.zeros(contrib.shape[1], dtype=np.int32)
    for size in range(1, nv + 1):
        if size * uniform < k:
            continue
        found = dfs(0, zero, [], size)
        if found is not None:
            return WdimResult(k, size, VertexSet(g, tuple(found)), "brute", True, {"nodes": nodes})
    raise AssertionError("V(G) is weak kappa-resolving, search cannot fail")


def wdim_formula_knkn(n, k):
    """wdim_k(K_n x K_n) for n >= 3 and 2 <= k <= 2n."""
    if n < 3 or not 2 <= k <= 2 * n:
        raise OutOfRange(f"closed form needs n >= 3 and 2 <= k <= 2n, got n={n}, k={k}")
    half = -(-k // 2)
    if k == 2:
        return -(-4 * n // 3)
    if k == 3 or k % 2 == 0:
        return n * half
    return n * half - 1


def wdim1_formula(n):
    """Metric dimension of K_n x K_n, which coincides with wdim_1."""
    if n < 2:
        raise OutOfRange("n must be at least 2")
    return (4 * n - 2) // 3


def conjecture_formula(n, m, k):
    """Conjectured wdim_k(K_n x K_m) for m > n (also k = 2 once m >= 2n).

    The value is not a theorem; callers should label it as conjectural.
    """
    if n < 3:
        raise OutOfRange("n must be at least 3")
    if k == 2:
        if m < 2 * n:
            raise OutOfRange("the k=2 case is only claimed for m >= 2n")
        return m
    if m < n + 1 or not 3 <= k <= 2 * n:
        raise OutOfRange(f"need m >= n+1 and 3 <= k <= 2n, got n={n}, m={m}, k={k}")
    half = -(-k // 2)
    return m * half if k % 2 == 0 else m * half - 1
