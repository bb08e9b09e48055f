import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wdimk.errors import BadDims, IndexOutOfRange, BudgetExceeded, GraphMismatch, KExceedsKappa, OutOfRange
from wdimk.graph import make_from_edges, make_hamming, make_hypercube
from wdimk.resolving import (
    VertexSet,
    conjecture_formula,
    delta_matrix,
    delta_set,
    delta_z,
    hamming,
    kappa,
    kappa_bruteforce,
    kappa_hamming_formula,
    verify,
    wdim1_formula,
    wdim_exact_bruteforce,
    wdim_formula_knkn,
)

from conftest import min_pair_sum

K33 = hamming(3, 3)


def v(i, j, g=K33):
    return g.index(i, j)


# delta ---------------------------------------------------------------------------
def test_delta_z_examples(k33_nx_dist):
    assert delta_z(K33, v(0, 0), v(0, 1), v(1, 2)) == 1
    d = k33_nx_dist
    assert delta_z(K33, v(0, 0), v(0, 1), v(1, 2)) == abs(d[v(0, 1), v(0, 0)] - d[v(1, 2), v(0, 0)])
    assert all(delta_z(K33, z, x, x) == 0 for z in range(9) for x in range(9))
    assert delta_z(K33, v(0, 0), v(0, 0), v(1, 1)) == 2


def test_delta_set_examples():
    empty = VertexSet(K33, ())
    assert all(delta_set(K33, empty, x, y) == 0 for x, y in itertools.combinations(range(9), 2))
    full = VertexSet(K33, tuple(range(9)))
    assert delta_set(K33, full, v(0, 0), v(0, 1)) == 6
    assert delta_set(K33, VertexSet.of(K33, [(0, 0)]), v(1, 0), v(2, 0)) == 0


def test_delta_set_graph_mismatch():
    s = VertexSet(hamming(4, 4), (0, 1))
    with pytest.raises(GraphMismatch):
        delta_set(K33, s, 0, 1)
    with pytest.raises(GraphMismatch):
        verify(K33, s, 1)


def test_delta_matrix_matches_definition():
    for g in (K33, make_hypercube(3), make_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])):
        s = list(range(0, g.vertex_count, 2))
        dm = delta_matrix(g, s)
        d = g.dist.astype(int)
        ref = np.abs(d[:, None, s] - d[None, :, s]).sum(axis=2)
        assert np.array_equal(dm, ref)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(3, 3), (4, 3), (2, 2, 2), (2, 5)]), st.data())
def test_delta_properties(dims, data):
    g = make_hamming(dims)
    n = g.vertex_count
    x, y, z = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert delta_z(g, z, x, y) == delta_z(g, z, y, x)
    assert delta_z(g, z, x, y) <= g.dist[x, y]
    small = data.draw(st.sets(st.integers(0, n - 1)))
    big = small | data.draw(st.sets(st.integers(0, n - 1)))
    assert delta_set(g, VertexSet(g, tuple(small)), x, y) <= delta_set(g, VertexSet(g, tuple(big)), x, y)


def test_delta_symmetry_and_bound_exhaustive():
    for g in (K33, hamming(4, 3), make_hypercube(3)):
        d = g.dist.astype(int)
        dz = np.abs(d[:, None, :] - d[None, :, :])  # [x, y, z]
        assert np.array_equal(dz, dz.transpose(1, 0, 2))
        assert (dz <= d[:, :, None]).all()


# verify / certificates -------------------------------------------------------------
def test_verify_examples():
    x4 = VertexSet.of(hamming(6, 6), [((i + j) % 6, j) for i in (4, 5) for j in range(6)])
    assert len(x4) == 12 and verify(x4.graph, x4, 4).valid
    for g in (K33, make_hypercube(3), make_from_edges(4, [(0, 1), (1, 2), (2, 3)])):
        cert = verify(g, VertexSet(g, tuple(range(g.vertex_count))), kappa_bruteforce(g))
        assert cert.valid and cert.min_value == kappa_bruteforce(g)
    cert = verify(K33, VertexSet.of(K33, [(0, 0)]), 2)
    assert not cert.valid and cert.min_value <= 1


def test_certificate_contents(k33_nx_dist):
    s = VertexSet.of(K33, [(0, 0), (1, 1), (2, 1)])
    cert = verify(K33, s, 2)
    assert cert.min_value == min_pair_sum(k33_nx_dist, list(s))
    pairs = list(itertools.combinations(range(9), 2))
    assert len(cert.pair_values) == len(pairs) == 36
    for x, y in pairs:
        assert cert.value(x, y) == delta_set(K33, s, x, y) == cert.value(y, x)
    # the minimising pair is the lexicographically least one attaining the minimum
    first = min(p for p in pairs if cert.value(*p) == cert.min_value)
    assert cert.min_pair == first
    js = cert.to_json()
    assert list(js) == ["graph", "k", "set", "size", "min_value", "min_pair", "valid"]
    assert js["graph"] == {"kind": "hamming", "dims": [3, 3]}
    assert js["set"] == [[0, 0], [1, 1], [2, 1]]


def test_certificate_nesting():
    for g in (K33, hamming(4, 3)):
        for size in (3, 5):
            s = VertexSet(g, tuple(range(0, 2 * size, 2)))
            cert = verify(g, s, 1)
            for k in range(1, cert.min_value + 1):
                assert verify(g, s, k).valid
            assert not verify(g, s, cert.min_value + 1).valid


def test_vertexset_behaviour():
    s = VertexSet.of(K33, [(2, 2), (0, 1), 4])
    assert list(s) == [1, 4, 8]
    assert (2, 2) in s and 4 in s and (0, 0) not in s
    assert s.coords() == [(0, 1), (1, 1), (2, 2)]
    assert s.without((1, 1)) == VertexSet(K33, (1, 8))
    with pytest.raises(ValueError):
        VertexSet(K33, (1, 1))
    with pytest.raises(IndexOutOfRange):
        VertexSet(K33, (9,))


# kappa -----------------------------------------------------------------------------
def test_kappa_examples():
    assert kappa_bruteforce(make_hamming([2])) == 2
    assert kappa_bruteforce(K33) == 6
    assert kappa_bruteforce(make_hypercube(3)) == 8
    assert kappa_hamming_formula([4, 3]) == 6
    assert kappa_hamming_formula([2, 2, 2]) == 8
    assert kappa_hamming_formula([5, 5]) == 10
    assert kappa(make_hamming([3, 7])) == 6


@pytest.mark.parametrize("dims", [[3], [3, 1], [3, 4], []])
def test_kappa_formula_bad_dims(dims):
    with pytest.raises(BadDims):
        kappa_hamming_formula(dims)


def test_kappa_path_graph():
    # P4: pair (1,2) gets |1-2|+|0-1|+|1-0|+|2-1| = 4, the smallest over pairs
    assert kappa_bruteforce(make_from_edges(4, [(0, 1), (1, 2), (2, 3)])) == 4


# exact search ----------------------------------------------------------------------
@pytest.mark.parametrize("k,expected", [(1, 3), (2, 4), (3, 6), (4, 6), (5, 8), (6, 9)])
def test_bruteforce_k33(k, expected):
    res = wdim_exact_bruteforce(K33, k)
    assert res.value == expected and res.method == "brute"
    assert verify(K33, res.witness, k).valid and len(res.witness) == expected


def test_bruteforce_lexicographic_witness(k33_nx_dist):
    for k in (1, 2, 3):
        res = wdim_exact_bruteforce(K33, k)
        # oracle: first combination in itertools order at the optimal size
        first = next(c for c in itertools.combinations(range(9), res.value)
                     if min_pair_sum(k33_nx_dist, c) >= k)
        assert tuple(res.witness) == first


def test_bruteforce_exact_bound_agrees():
    for g in (hamming(4, 3), make_hypercube(3), make_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)])):
        for k in range(1, kappa_bruteforce(g) + 1):
            a = wdim_exact_bruteforce(g, k)
            b = wdim_exact_bruteforce(g, k, exact_bound=True)
            assert a.value == b.value and a.witness == b.witness


def test_bruteforce_on_general_graph_matches_definition():
    g = make_from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
    d = g.dist.astype(int)
    for k in range(1, kappa_bruteforce(g) + 1):
        best = next(size for size in range(1, 7)
                    if any(min_pair_sum(d, c) >= k for c in itertools.combinations(range(6), size)))
        assert wdim_exact_bruteforce(g, k).value == best


def test_bruteforce_monotone_in_k():
    for g in (K33, hamming(4, 3)):
        vals = [wdim_exact_bruteforce(g, k).value for k in range(1, kappa(g) + 1)]
        assert vals == sorted(vals)


def test_bruteforce_errors():
    with pytest.raises(KExceedsKappa):
        wdim_exact_bruteforce(K33, 7)
    with pytest.raises(BudgetExceeded):
        wdim_exact_bruteforce(hamming(4, 4), 5, node_budget=10)
    with pytest.raises(OutOfRange):
        wdim_exact_bruteforce(K33, 0)


# closed forms ----------------------------------------------------------------------
def test_formula_examples():
    assert wdim_formula_knkn(6, 2) == 8
    assert wdim_formula_knkn(5, 5) == 14
    assert wdim_formula_knkn(4, 3) == 8
    assert wdim_formula_knkn(5, 10) == 25
    assert wdim1_formula(3) == 3 and wdim1_formula(4) == 4
    for bad in ((2, 2), (5, 1), (5, 11)):
        with pytest.raises(OutOfRange):
            wdim_formula_knkn(*bad)


def test_conjecture_examples():
    assert conjecture_formula(5, 7, 7) == 27
    assert conjecture_formula(6, 10, 12) == 60
    assert conjecture_formula(5, 10, 2) == 10
    for bad in ((5, 5, 4), (5, 7, 11), (5, 8, 2), (2, 5, 3)):
        with pytest.raises(OutOfRange):
            conjecture_formula(*bad)


def test_wdim_result_json():
    res = wdim_exact_bruteforce(K33, 2)
    js = res.to_json()
    assert js["value"] == 4 and js["method"] == "brute"
    assert "elapsed_ms" not in js
