"""Weak k-resolving sets and the weak k-metric dimension of graphs, with exact
solvers and constructions for two-dimensional Hamming graphs K_n x K_m."""
from .constructions import (
    build_gy,
    construct_diagonal,
    construct_xt,
    construct_xt_prime,
    construct_yn,
    construction_for,
)
from .errors import *  # noqa: F401,F403
from .graph import Graph, Layer, aligned, layers, make_from_edges, make_hamming, make_hypercube, read_edge_list
from .resolving import (
    Certificate,
    VertexSet,
    WdimResult,
    conjecture_formula,
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

__version__ = "0.1.0"
