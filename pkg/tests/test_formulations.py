import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wdimk.errors import BadOrder, KExceedsKappa, KTooSmallForReduction, NotTwoDimensionalHamming, SameVertex
from wdimk.graph import aligned, make_from_edges, make_hypercube
from wdimk.ilp.formulations import (
    build_fgh,
    build_fs,
    build_fs_minus,
    coefficient_a,
    coefficient_row,
    corners,
    index_set_iuv,
)
from wdimk.resolving import VertexSet, hamming

K33 = hamming(3, 3)


def v(i, j, g=K33):
    return g.index(i, j)


def test_coefficient_examples():
    assert coefficient_a(K33, v(0, 0), v(1, 1), v(0, 0)) == 2
    assert coefficient_a(K33, v(0, 0), v(1, 1), v(0, 1)) == 0
    assert coefficient_a(K33, v(0, 0), v(0, 1), v(0, 0)) == 1
    with pytest.raises(BadOrder):
        coefficient_a(K33, 4, 2, 0)
    with pytest.raises(BadOrder):
        coefficient_a(K33, 2, 2, 0)


def test_coefficient_consistency_exhaustive():
    # every K_n x K_m with nm <= 100, every triple
    checked = 0
    for n in range(2, 51):
        for m in range(2, 100 // n + 1):
            g = hamming(n, m)
            d = g.dist.astype(np.int64)
            nv = n * m
            for u in range(nv):
                for w in range(u + 1, nv):
                    row = coefficient_row(g, u, w)
                    assert np.array_equal(row, np.abs(d[u] - d[w]))
            checked += 1
    assert checked > 100


@pytest.mark.parametrize("dims", [(3, 3), (3, 4), (2, 5)])
def test_scalar_coefficient_matches_row(dims):
    g = hamming(*dims)
    for u, w in itertools.combinations(range(g.vertex_count), 2):
        row = coefficient_row(g, u, w)
        assert [coefficient_a(g, u, w, z) for z in range(g.vertex_count)] == row.tolist()


def test_index_set_examples():
    s = index_set_iuv(K33, v(0, 0), v(1, 1))
    assert set(s.coords()) == {(0, 2), (2, 0), (1, 2), (2, 1)}
    for n in (3, 4, 5):
        g = hamming(n, n)
        s = index_set_iuv(g, v(0, 0, g), v(0, 1, g))
        assert len(s) == 2 * (n - 1)
        assert set(s.coords()) == {(i, j) for i in range(1, n) for j in (0, 1)}
    with pytest.raises(SameVertex):
        index_set_iuv(K33, 3, 3)


def test_index_set_is_coefficient_one_set():
    g = hamming(3, 4)
    for u, w in itertools.combinations(range(12), 2):
        row = coefficient_row(g, u, w)
        expect = {z for z in range(12) if row[z] == 1 and z not in (u, w)}
        assert set(index_set_iuv(g, u, w)) == expect


def _nonaligned_pairs(g):
    return [(u, w) for u, w in itertools.combinations(range(g.vertex_count), 2) if not aligned(g, u, w)]


@pytest.mark.parametrize("dims", [(3, 3), (4, 4), (3, 5)])
def test_disjoint_decomposition(dims):
    g = hamming(*dims)
    for u, w in _nonaligned_pairs(g):
        ut, wt = corners(g, u, w)
        a = set(index_set_iuv(g, u, wt)) - {ut, w}
        b = set(index_set_iuv(g, u, ut)) - {wt, w}
        assert not a & b
        assert a | b == set(index_set_iuv(g, u, w))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**16 - 1))
def test_reduction_identity_random(bits):
    g = hamming(4, 4)
    s = np.array([(bits >> i) & 1 for i in range(16)])
    for u, w in _nonaligned_pairs(g):
        ut, wt = corners(g, u, w)
        lhs = s[list(index_set_iuv(g, u, w))].sum()
        rhs = s[list(index_set_iuv(g, u, wt))].sum() + s[list(index_set_iuv(g, u, ut))].sum() - 2 * s[w] - s[ut] - s[wt]
        assert lhs == rhs


def test_fs_shape():
    m = build_fs(K33, 2)
    assert len(m.variables) == 9 and all(x.kind == "binary" for x in m.variables)
    assert len(m.constraints) == 36
    assert [c.name for c in m.constraints[:3]] == ["c1", "c2", "c3"]
    # first constraint is the pair (0,0),(0,1)
    assert dict(m.constraints[0].terms) == {
        w: c for w, c in enumerate(coefficient_row(K33, 0, 1)) if c
    }
    with pytest.raises(KExceedsKappa):
        build_fs(K33, 7)


def test_fs_on_general_graph_uses_distances():
    g = make_from_edges(4, [(0, 1), (1, 2), (2, 3)])
    m = build_fs(g, 2)
    assert m.dims is None and len(m.constraints) == 6
    d = g.dist.astype(int)
    for c, (x, y) in zip(m.constraints, itertools.combinations(range(4), 2)):
        assert dict(c.terms) == {w: abs(d[x, w] - d[y, w]) for w in range(4) if d[x, w] != d[y, w]}


@pytest.mark.parametrize("n,m", [(5, 5), (3, 4), (4, 6)])
def test_fs_minus_count(n, m):
    model = build_fs_minus(hamming(n, m), 4)
    assert len(model.constraints) == n * comb(m, 2) + m * comb(n, 2)
    if (n, m) == (5, 5):
        assert len(model.constraints) == 100


def test_fs_minus_rejects_small_k():
    with pytest.raises(KTooSmallForReduction):
        build_fs_minus(K33, 3)


def test_fs_minus_constraints_match_fs_rows():
    g = hamming(3, 4)
    fs, fsm = build_fs(g, 4), build_fs_minus(g, 4)
    aligned_rows = [dict(c.terms) for c, (u, w) in zip(fs.constraints, itertools.combinations(range(12), 2))
                    if aligned(g, u, w)]
    assert aligned_rows == [dict(c.terms) for c in fsm.constraints]


def test_fgh_structure():
    n, m = 4, 5
    g = hamming(n, m)
    hi = build_fgh(g, 6)
    names = [x.name for x in hi.variables]
    assert names[:3] == ["s_0_0", "s_0_1", "s_0_2"]
    assert names[n * m:] == [f"h_{j}" for j in range(m)] + [f"g_{i}" for i in range(n)]
    assert all(x.upper == n for x in hi.variables if x.name.startswith("h_"))
    assert all(x.upper == m for x in hi.variables if x.name.startswith("g_"))
    assert len(hi.constraints) == m + n + comb(m, 2) + comb(n, 2)
    lo = build_fgh(g, 3)
    nonaligned = len(_nonaligned_pairs(g))
    assert len(lo.constraints) == m + n + comb(m, 2) + comb(n, 2) + nonaligned
    assert [c.sense for c in lo.constraints[: m + n]] == ["="] * (m + n)


def test_fgh_nonaligned_rows_are_fs_rows_rewritten():
    # on 0-1 points with linkage satisfied, each non-aligned fgh row equals the fs row
    g = hamming(3, 4)
    fs = build_fs(g, 2)
    fgh = build_fgh(g, 2)
    rng = np.random.default_rng(0)
    pairs = list(itertools.combinations(range(12), 2))
    fs_rows = [c for c, (u, w) in zip(fs.constraints, pairs) if not aligned(g, u, w)]
    gh_rows = fgh.constraints[4 + 3 + 6 + 3:]
    assert len(fs_rows) == len(gh_rows)
    for _ in range(50):
        s = rng.integers(0, 2, size=(3, 4))
        x = np.concatenate([s.ravel(), s.sum(axis=0), s.sum(axis=1)])
        for a, b in zip(fs_rows, gh_rows):
            assert a.activity(x) == b.activity(x)


def test_builders_need_2d():
    with pytest.raises(NotTwoDimensionalHamming):
        build_fgh(make_hypercube(3), 2)
    with pytest.raises(NotTwoDimensionalHamming):
        build_fs_minus(make_hypercube(3), 4)


def test_model_evaluate():
    m = build_fs(K33, 2)
    assert m.evaluate([1] * 9) == 9
    assert m.evaluate([0] * 9) is None
    bad = VertexSet.of(K33, [(0, 0), (0, 1), (1, 0), (2, 2)])  # min pair sum 1
    good = VertexSet.of(K33, [(0, 0), (0, 1), (1, 2), (2, 2)])
    assert m.evaluate([1 if z in bad else 0 for z in range(9)]) is None
    assert m.evaluate([1 if z in good else 0 for z in range(9)]) == 4
