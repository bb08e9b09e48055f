"""The three integer programs for wdim_k on K_n x K_m.

fs        one covering constraint per unordered vertex pair
fs_minus  aligned pairs only (valid for k >= 4)
fgh       layer-count variables h_j (column j) and g_i (row i); the pair
          constraints for non-aligned vertices are kept only for k <= 3
"""
from __future__ import annotations

from itertools import combinations

import numpy as np

from ..errors import (
    BadOrder,
    KExceedsKappa,
    KTooSmallForReduction,
    NotTwoDimensionalHamming,
    OutOfRange,
    SameVertex,
)
from ..graph import aligned
from ..resolving import VertexSet, kappa
from .model import Constraint, IlpModel, Variable


def _dims(g):
    if not g.is_2d:
        raise NotTwoDimensionalHamming(f"{g.describe()} is not K_n x K_m")
    return g.dims


def coefficient_a(g, u, v, w):
    """|d(u,w) - d(v,w)| in K_n x K_m, from the alignment case split."""
    n, m = _dims(g)
    if u >= v:
        raise BadOrder(f"coefficient needs u < v, got u={u}, v={v}")
    uv_aligned = aligned(g, u, v)
    if w == u or w == v:
        return 1 if uv_aligned else 2
    wu = aligned(g, w, u)
    wv = aligned(g, w, v)
    return 1 if wu != wv else 0


def coefficient_row(g, u, v):
    """Vector of a_uvw over all w, computed with the same case rule as coefficient_a."""
    n, m = _dims(g)
    if u >= v:
        raise BadOrder(f"coefficient needs u < v, got u={u}, v={v}")
    ii, jj = np.divmod(np.arange(n * m), m)
    (iu, ju), (iv, jv) = divmod(u, m), divmod(v, m)
    al_u = (ii == iu) != (jj == ju)
    al_v = (ii == iv) != (jj == jv)
    row = (al_u != al_v).astype(np.int64)
    row[[u, v]] = 1 if aligned(g, u, v) else 2
    return row


def index_set_iuv(g, u, v):
    """Vertices other than u, v aligned with exactly one of them."""
    _dims(g)
    if u == v:
        raise SameVertex("I_uv needs two distinct vertices")
    out = [w for w in range(g.vertex_count) if w not in (u, v) and aligned(g, w, u) != aligned(g, w, v)]
    return VertexSet(g, tuple(out))


def corners(g, u, v):
    """For non-aligned u=(iu,ju), v=(iv,jv): the two common neighbours (iu,jv), (iv,ju)."""
    n, m = _dims(g)
    (iu, ju), (iv, jv) = divmod(u, m), divmod(v, m)
    return iu * m + jv, iv * m + ju


def _check_k(g, k):
    if k < 1:
        raise OutOfRange("k must be a positive integer")
    kap = kappa(g)
    if k > kap:
        raise KExceedsKappa(f"k={k} exceeds kappa={kap} of {g.describe()}")


def _s_variables(g):
    if g.is_2d:
        n, m = g.dims
        return [Variable(f"s_{i}_{j}", "binary") for i in range(n) for j in range(m)]
    return [Variable(f"s_{v}", "binary") for v in range(g.vertex_count)]


def _named(rows):
    return tuple(Constraint(f"c{r + 1}", terms, sense, rhs) for r, (terms, sense, rhs) in enumerate(rows))


def _meta(g, tag, k):
    return {"formulation": tag, "dims": tuple(g.dims) if g.is_2d else None, "k": int(k)}


def build_fs(g, k):
    """min sum s_u  s.t.  sum_w |d(u,w) - d(v,w)| s_w >= k for every pair u < v.

    Works on any connected graph; on K_n x K_m the coefficients come from the
    alignment rule rather than the distance matrix.
    """
    _check_k(g, k)
    nv = g.vertex_count
    dist = g.dist.astype(np.int64)
    rows = []
    for u, v in combinations(range(nv), 2):
        coefs = coefficient_row(g, u, v) if g.is_2d else np.abs(dist[u] - dist[v])
        terms = tuple((w, int(c)) for w, c in enumerate(coefs) if c)
        rows.append((terms, ">=", k))
    return IlpModel(tuple(_s_variables(g)), tuple((v, 1) for v in range(nv)), _named(rows), _meta(g, "fs", k))


def build_fs_minus(g, k):
    """Aligned-pair constraints s_u + s_v + sum_{I_uv} s_w >= k only."""
    n, m = _dims(g)
    if k < 4:
        raise KTooSmallForReduction(f"dropping non-aligned pairs is only valid for k >= 4, got {k}")
    _check_k(g, k)
    nv = g.vertex_count
    rows = []
    for u, v in combinations(range(nv), 2):
        if not aligned(g, u, v):
            continue
        terms = [(u, 1), (v, 1)] + [(w, 1) for w in index_set_iuv(g, u, v)]
        rows.append((tuple(sorted(terms)), ">=", k))
    return IlpModel(tuple(_s_variables(g)), tuple((v, 1) for v in range(nv)), _named(rows), _meta(g, "fs_minus", k))


def build_fgh(g, k):
    """Layer-count formulation.

    Variables: s_i_j (binary), h_j = sum_i s_i_j, g_i = sum_j s_i_j (integers).
    Constraints in order: h linkage, g linkage, h_j + h_j' >= k, g_i + g_i' >= k,
    and for k <= 3 the non-aligned family
    h_ju + h_jv + g_iu + g_iv - 2 s_(iu,jv) - 2 s_(iv,ju) >= k.
    """
    n, m = _dims(g)
    _check_k(g, k)
    nv = n * m
    variables = _s_variables(g)
    h = {j: nv + j for j in range(m)}
    gi = {i: nv + m + i for i in range(n)}
    variables += [Variable(f"h_{j}", "integer", n) for j in range(m)]
    variables += [Variable(f"g_{i}", "integer", m) for i in range(n)]
    rows = []
    for j in range(m):
        rows.append((((h[j], 1),) + tuple((i * m + j, -1) for i in range(n)), "=", 0))
    for i in range(n):
        rows.append((((gi[i], 1),) + tuple((i * m + j, -1) for j in range(m)), "=", 0))
    for j, jj in combinations(range(m), 2):
        rows.append((((h[j], 1), (h[jj], 1)), ">=", k))
    for i, ii in combinations(range(n), 2):
        rows.append((((gi[i], 1), (gi[ii], 1)), ">=", k))
    if k <= 3:
        for u, v in combinations(range(nv), 2):
            if aligned(g, u, v):
                continue
            (iu, ju), (iv, jv) = divmod(u, m), divmod(v, m)
            cu, cv = corners(g, u, v)
            terms = ((h[ju], 1), (h[jv], 1), (gi[iu], 1), (gi[iv], 1), (cu, -2), (cv, -2))
            rows.append((terms, ">=", k))
    return IlpModel(tuple(variables), tuple((v, 1) for v in range(nv)), _named(rows), _meta(g, "fgh", k))


BUILDERS = {"fs": build_fs, "fs_minus": build_fs_minus, "fgh": build_fgh}
