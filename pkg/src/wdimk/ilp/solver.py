"""Exact solving of the integer programs, with structure-aware fast paths.

Routing under method="auto":

* fgh, k >= 4: count vectors + Gale-Ryser (no s-level constraints remain)
* fgh, k <= 3: margin search (see margins.py)
* anything else: generic branch and bound on the binaries

Every witness is checked against the model it claims to solve.
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field

import numpy as np

from ..constructions import construction_for
from ..errors import BudgetExceeded, Infeasible
from ..resolving import VertexSet, hamming
from .bnb import DEFAULT_BNB_BUDGET, BranchAndBound, Presolved
from .counts import count_vectors, gale_ryser, greedy_fill, min_total
from .margins import margin_search

DEFAULT_COUNT_BUDGET = 1_000_000
METHOD_TAGS = {"fs": "ilp_fs", "fs_minus": "ilp_fs_minus", "fgh": "ilp_fgh"}


@dataclass
class SolveResult:
    optimum: int
    witness: VertexSet | None
    nodes_explored: int
    method: str
    proved_optimal: bool
    values: np.ndarray | None = field(default=None, repr=False)
    path: str = ""  # which algorithm produced the answer

    def to_json(self):
        return {
            "optimum": self.optimum,
            "witness": [list(c) for c in self.witness.coords()] if self.witness is not None else None,
            "nodes_explored": self.nodes_explored,
            "method": self.method,
            "path": self.path,
            "proved_optimal": self.proved_optimal,
        }


def _logger(verbose):
    if not verbose:
        return lambda **kw: None

    def log(**kw):
        print(json.dumps(kw, sort_keys=False), file=sys.stderr, flush=True)

    return log


def _binaries(model):
    return [i for i, v in enumerate(model.variables) if v.kind == "binary"]


def _graph_for(model, graph):
    if graph is not None:
        return graph
    if model.dims is not None:
        return hamming(*model.dims)
    return None


def _grid_to_full(model, mat):
    """Full assignment of an fgh-style model from an n x m 0-1 matrix."""
    x = np.zeros(len(model.variables), dtype=np.int64)
    n, m = mat.shape
    for i in range(n):
        for j in range(m):
            x[model.var_index(f"s_{i}_{j}")] = int(mat[i, j])
    for j in range(m):
        x[model.var_index(f"h_{j}")] = int(mat[:, j].sum())
    for i in range(n):
        x[model.var_index(f"g_{i}")] = int(mat[i].sum())
    return x


def _witness(model, g, x):
    if g is None:
        return None
    bins = _binaries(model)
    return VertexSet(g, tuple(v for v, b in enumerate(bins) if x[b]))


def _finish(model, g, x, method, path, nodes, proved):
    if model.evaluate(x) is None:
        raise AssertionError(f"{path} produced an assignment violating the model")
    opt = int(sum(c * x[v] for v, c in model.objective))
    return SolveResult(opt, _witness(model, g, x), int(nodes), method, proved, x, path)


def _count_path(model, budget, log):
    n, m = model.dims
    k = model.k
    lo_g, lo_h = min_total(n, m, k), min_total(m, n, k)
    if lo_g is None or lo_h is None:
        raise Infeasible(f"no layer counts reach k={k} on {n}x{m}")
    seen = 0
    for total in range(max(lo_g, lo_h), n * m + 1):
        hs = None
        for g in count_vectors(n, m, k, total):
            if hs is None:
                hs = []
                for h in count_vectors(m, n, k, total):
                    hs.append(h)
                    seen += 1
            seen += 1
            if seen > budget:
                raise BudgetExceeded(f"count-vector budget of {budget} exhausted")
            for h in hs:
                if gale_ryser(g, h):
                    mat = greedy_fill(g, h)
                    log(event="count_path", total=total, g=list(g), h=list(h), vectors=seen)
                    return mat, seen
        log(event="count_level_exhausted", total=total, vectors=seen)
    raise Infeasible(f"no realizable layer counts for k={k} on {n}x{m}")


def _hint_vector(model, hint):
    bins = _binaries(model)
    if hint is None or len(bins) == 0:
        return None
    s = np.zeros(len(bins), dtype=np.int64)
    for v in hint:
        if v >= len(bins):
            return None
        s[v] = 1
    return s


def _default_hint(model, g):
    dims = model.dims
    if dims is None or dims[0] != dims[1] or model.k is None:
        return None
    try:
        return construction_for(dims[0], model.k)
    except Exception:
        return None


def _bnb(model, g, hint, budget, log, method):
    pre = Presolved(model)
    grid = None
    if model.dims is not None:
        try:
            grid = model.s_grid()
        except KeyError:
            grid = None
    bb = BranchAndBound(pre, grid=grid, budget=budget, log=log)
    hs = _hint_vector(model, hint)
    best, proved = bb.run(hint=hs)
    log(event="bnb_done", nodes=bb.nodes, best=int(best.sum()) if best is not None else None, proved=proved)
    if best is None:
        if proved:
            raise Infeasible("model has no feasible 0-1 assignment")
        raise BudgetExceeded("branch-and-bound budget exhausted without an incumbent")
    return _finish(model, g, pre.expand(best), method, "bnb", bb.nodes, proved)


def solve(model, incumbent_hint=None, method="auto", budget=None, count_budget=DEFAULT_COUNT_BUDGET,
          verbose=False, graph=None):
    """Minimize the model exactly.

    ``method`` is "auto" or "bnb" (force the generic search). When a budget
    runs out the best incumbent is returned with proved_optimal=False;
    BudgetExceeded is raised only if there is no incumbent at all.
    """
    log = _logger(verbose)
    budget = DEFAULT_BNB_BUDGET if budget is None else int(budget)
    g = _graph_for(model, graph)
    tag = METHOD_TAGS.get(model.formulation, "ilp")
    hint = incumbent_hint if incumbent_hint is not None else _default_hint(model, g)
    log(event="solve", **model.summary(), hint=len(hint) if hint is not None else None)

    if method == "auto" and model.formulation == "fgh" and model.dims is not None:
        n, m = model.dims
        k = model.k
        try:
            if k >= 4:
                mat, seen = _count_path(model, count_budget, log)
                return _finish(model, g, _grid_to_full(model, mat), tag, "counts", seen, True)
            hint_x = None
            if hint is not None and hint.graph.dims == (n, m):
                mat = np.zeros((n, m), dtype=np.int8)
                for i, j in hint.coords():
                    mat[i, j] = 1
                hint_x = _grid_to_full(model, mat)
                if model.evaluate(hint_x) is None:
                    hint_x = None
            upper = int(sum(hint_x[b] for b in _binaries(model))) if hint_x is not None else None
            mat, total, proved, nodes = margin_search(n, m, k, upper=upper, budget=budget, log=log)
            if mat is not None:
                return _finish(model, g, _grid_to_full(model, mat), tag, "margins", nodes, True)
            if hint_x is not None:
                return _finish(model, g, hint_x, tag, "margins", nodes, True)
            raise Infeasible(f"no feasible matrix for k={k} on {n}x{m}")
        except BudgetExceeded as exc:
            log(event="fast_path_budget", message=str(exc))
    elif method not in ("auto", "bnb"):
        raise ValueError(f"unknown solve method {method!r}")
    return _bnb(model, g, hint, budget, log, tag)
