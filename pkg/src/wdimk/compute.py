"""One entry point for wdim_k by any method, shared by the CLI and the table harness."""
from __future__ import annotations

import time

from .constructions import construction_for
from .errors import KExceedsKappa, OutOfRange
from .ilp.formulations import BUILDERS
from .ilp.solver import solve
from .resolving import WdimResult, kappa, verify, wdim1_formula, wdim_exact_bruteforce, wdim_formula_knkn

METHODS = ("auto", "formula", "brute", "ilp:fs", "ilp:fs-", "ilp:fgh")
_ILP = {"ilp:fs": "fs", "ilp:fs-": "fs_minus", "ilp:fgh": "fgh"}


def formula_applies(g, k):
    if not g.is_2d or g.dims[0] != g.dims[1]:
        return False
    n = g.dims[0]
    return (k == 1 and n >= 2) or (n >= 3 and 2 <= k <= 2 * n)


def _formula(g, k):
    n = g.dims[0]
    if k == 1:
        return WdimResult(k, wdim1_formula(n), None, "formula_k1")
    value = wdim_formula_knkn(n, k)
    witness = construction_for(n, k, graph=g)
    if witness is not None:
        cert = verify(g, witness, k)
        if not cert.valid or len(witness) != value:
            raise AssertionError(f"construction for n={n}, k={k} failed its certificate")
    return WdimResult(k, value, witness, "formula")


def compute_wdim(g, k, method="auto", budget=None, verbose=False):
    """wdim_k(g) as a WdimResult; ``info`` carries nodes, solver path and elapsed_ms."""
    if method not in METHODS:
        raise OutOfRange(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if k < 1:
        raise OutOfRange("k must be a positive integer")
    kap = kappa(g)
    if k > kap:
        raise KExceedsKappa(f"k={k} exceeds kappa={kap} of {g.describe()}")
    if method == "auto":
        if formula_applies(g, k):
            method = "formula"
        elif g.is_2d:
            method = "ilp:fgh"
        else:
            method = "brute"
    start = time.perf_counter()
    if method == "formula":
        if not formula_applies(g, k):
            raise OutOfRange(f"no proven closed form for {g.describe()} at k={k}")
        res = _formula(g, k)
        info = {}
    elif method == "brute":
        res = wdim_exact_bruteforce(g, k, node_budget=budget)
        info = dict(res.info)
    else:
        model = BUILDERS[_ILP[method]](g, k)
        sr = solve(model, budget=budget, verbose=verbose, graph=g)
        res = WdimResult(k, sr.optimum, sr.witness, sr.method, sr.proved_optimal)
        info = {"nodes": sr.nodes_explored, "path": sr.path}
    info["elapsed_ms"] = round(1000 * (time.perf_counter() - start), 3)
    return WdimResult(res.k, res.value, res.witness, res.method, res.proved, info)
