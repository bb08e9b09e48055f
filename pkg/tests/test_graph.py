import math
from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wdimk.errors import (
    DimensionTooSmall,
    Disconnected,
    IndexOutOfRange,
    NotTwoDimensionalHamming,
    ParseError,
    SameVertex,
    SelfLoop,
    TooLarge,
)
from wdimk.graph import (
    aligned,
    bfs_distances,
    layers,
    make_from_edges,
    make_hamming,
    make_hypercube,
    read_edge_list,
    write_edge_list,
)

from conftest import nx_dist, nx_hamming


def dims_tuples(cap=400):
    out = []

    def rec(prefix, prod, top):
        if len(prefix) >= 1:
            out.append(tuple(prefix))
        for d in range(2, top + 1):
            if prod * d <= cap:
                rec(prefix + [d], prod * d, d)

    rec([], 1, cap)
    return out


def test_k3k3_basic():
    g = make_hamming([3, 3])
    assert g.vertex_count == 9
    deg = (g.dist == 1).sum(axis=1)
    assert (deg == 4).all()
    assert len(g.edges) == 18


def test_k2_and_q3():
    g = make_hamming([2])
    assert g.dist[0, 1] == 1
    q = make_hamming([2, 2, 2])
    assert q.diameter == 3
    assert make_hypercube(3).dist.tolist() == q.dist.tolist()


def test_row_major_indexing():
    g = make_hamming([5, 7])
    for i in range(5):
        for j in range(7):
            v = g.index(i, j)
            assert v == i * 7 + j
            assert g.coords(v) == (i, j)


def test_bad_dims():
    with pytest.raises(DimensionTooSmall):
        make_hamming([3, 1])
    with pytest.raises(TooLarge):
        make_hamming([65, 65])
    with pytest.raises(TooLarge):
        make_hamming([10, 10], vertex_cap=50)


def test_hamming_matches_bfs_exhaustive():
    # every product of at least two factors with <= 400 vertices; single cliques
    # are trivially complete, so only small ones are included
    count = 0
    for dims in dims_tuples(400):
        if len(dims) == 1 and dims[0] > 30:
            continue
        g = make_hamming(dims)
        d = bfs_distances(g.vertex_count, list(g.edges))
        assert np.array_equal(d, g.dist), dims
        count += 1
    assert count > 50


@pytest.mark.parametrize("dims", [(3, 3), (2, 4), (2, 2, 2), (3, 2, 2)])
def test_hamming_matches_networkx(dims):
    g = make_hamming(dims)
    assert np.array_equal(g.dist, nx_dist(nx_hamming(*dims), g.vertex_count))


def test_metric_axioms():
    for dims in [(4, 3), (2, 2, 2, 2), (5,)]:
        d = make_hamming(dims).dist.astype(int)
        assert (d == d.T).all()
        assert (np.diag(d) == 0).all()
        assert (d + np.eye(len(d), dtype=int) > 0).all()
        n = len(d)
        for a in range(n):
            assert (d[a][:, None] <= d[a][None, :] + d).all()


def test_from_edges_examples():
    assert make_from_edges(2, [(0, 1)]).dist[0, 1] == 1
    p4 = make_from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert p4.dist[0, 3] == 3
    assert p4.kind == "general"
    h = make_hamming([3, 3])
    assert np.array_equal(make_from_edges(9, list(h.edges)).dist, h.dist)


def test_from_edges_errors():
    with pytest.raises(Disconnected):
        make_from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(SelfLoop):
        make_from_edges(3, [(0, 0), (0, 1), (1, 2)])
    with pytest.raises(IndexOutOfRange):
        make_from_edges(3, [(0, 5)])


def test_adjacency_iff_distance_one():
    for g in (make_hamming([4, 3]), make_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])):
        es = set(g.edges)
        for u, v in combinations(range(g.vertex_count), 2):
            assert ((u, v) in es) == (g.dist[u, v] == 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=20), st.randoms())
def test_random_connected_graphs_match_networkx(n, extra, rnd):
    # random spanning tree plus random extra edges
    edges = [(rnd.randrange(v), v) for v in range(1, n)]
    edges += [(a % n, b % n) for a, b in extra if a % n != b % n]
    g = make_from_edges(n, edges)
    ref = nx.Graph()
    ref.add_nodes_from(range(n))
    ref.add_edges_from(edges)
    assert np.array_equal(g.dist, nx_dist(ref, n))


def test_layers():
    ls = layers(make_hamming([3, 3]))
    assert len(ls) == 6 and all(len(layer.members) == 3 for layer in ls)
    g = make_hamming([5, 7])
    ls = layers(g)
    vert = [layer for layer in ls if layer.orientation == "vertical"]
    hor = [layer for layer in ls if layer.orientation == "horizontal"]
    assert len(vert) == 5 and all(len(layer.members) == 7 for layer in vert)
    assert len(hor) == 7 and all(len(layer.members) == 5 for layer in hor)
    v = g.index(2, 4)
    assert [layer.fixed_index for layer in vert if v in layer.members] == [2]
    assert [layer.fixed_index for layer in hor if v in layer.members] == [4]
    assert sorted(x for layer in vert for x in layer.members) == list(range(35))
    assert sorted(x for layer in hor for x in layer.members) == list(range(35))
    for layer in vert:
        assert {g.coords(x)[0] for x in layer.members} == {layer.fixed_index}
    with pytest.raises(NotTwoDimensionalHamming):
        layers(make_hypercube(3))


def test_aligned():
    g = make_hamming([5, 7])
    assert aligned(g, g.index(0, 0), g.index(0, 3))
    assert not aligned(g, g.index(0, 0), g.index(1, 1))
    assert aligned(g, g.index(2, 4), g.index(3, 4))
    with pytest.raises(SameVertex):
        aligned(g, 3, 3)
    for u, v in combinations(range(35), 2):
        assert aligned(g, u, v) == (g.dist[u, v] == 1)


def test_edge_list_io(tmp_path):
    g = make_hamming([3, 2])
    p = tmp_path / "g.txt"
    write_edge_list(g, p)
    h = read_edge_list(p)
    assert np.array_equal(h.dist, g.dist)
    q = tmp_path / "c.txt"
    q.write_text("# path\n4 3\n0 1\n1 2  # middle\n2 3\n")
    assert read_edge_list(q).dist[0, 3] == 3


@pytest.mark.parametrize("text,line", [("3 2\n0 1\n1 x\n", 3), ("3 2\n0 1\n", 1), ("3 1\n0 1 2\n", 2)])
def test_edge_list_errors(tmp_path, text, line):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    with pytest.raises(ParseError) as exc:
        read_edge_list(p)
    assert exc.value.line == line


def test_dims_enumeration_covers_required_cases():
    ds = set(dims_tuples(400))
    assert all((n, m) in ds for n in range(2, 9) for m in range(2, n + 1))
    assert all((2,) * r in ds for r in range(1, 6))
    assert all(math.prod(d) <= 400 for d in ds)
