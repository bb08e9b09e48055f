"""Independent oracles used across the suite (networkx distances, direct sums)."""
import itertools
import sys

import networkx as nx
import numpy as np
import pytest


def nx_hamming(*dims):
    g = nx.complete_graph(dims[0])
    for d in dims[1:]:
        g = nx.cartesian_product(g, nx.complete_graph(d))
    # flatten nested tuples to coordinate tuples, then to row-major ids
    def flat(x):
        return flat(x[0]) + (x[1],) if isinstance(x, tuple) else (x,)

    ids = {v: int(np.ravel_multi_index(flat(v), dims)) for v in g.nodes}
    return nx.relabel_nodes(g, ids)


def nx_dist(graph_nx, n):
    d = np.zeros((n, n), dtype=np.int64)
    for u, row in nx.all_pairs_shortest_path_length(graph_nx):
        for v, x in row.items():
            d[u, v] = x
    return d


def min_pair_sum(dist, members):
    """min over x<y of sum_w |d(x,w) - d(y,w)|, straight from the definition."""
    n = len(dist)
    best = None
    for x, y in itertools.combinations(range(n), 2):
        s = sum(abs(int(dist[x, w]) - int(dist[y, w])) for w in members)
        best = s if best is None else min(best, s)
    return best


@pytest.fixture(scope="session")
def k33_nx_dist():
    return nx_dist(nx_hamming(3, 3), 9)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
