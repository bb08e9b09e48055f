"""Exact search for the layer-count model when k <= 3.

With row sums g and column sums h fixed, every constraint of the model is
local to a 2x2 submatrix: for rows i != i', columns j != j' and
M = g_i + g_i' + h_j + h_j',

    2 (s_ij' + s_i'j) <= M - k   and   2 (s_ij + s_i'j') <= M - k.

So a one at (i, j) needs M >= k + 2 against every opposite row/column, and two
ones in opposite corners need M >= k + 4. The search walks the total T upward
from the trivial bound. For each T it enumerates sorted margin pairs and looks
for a 0-1 matrix row by row, with

* both row and column margins sorted, so equal-margin blocks are
  interchangeable and only lex-nonincreasing rows (resp. columns) within a
  block are tried,
* a Gale-Ryser test on what is left after each row.
"""
from __future__ import annotations

import numpy as np

from ..errors import BudgetExceeded
from .counts import count_vectors, gale_ryser, min_total

DEFAULT_MARGIN_BUDGET = 10_000_000


class _Search:
    def __init__(self, g, h, k, budget, counter):
        self.g, self.h, self.k = g, h, k
        self.n, self.m = len(g), len(h)
        self.budget = budget
        self.counter = counter
        n, m = self.n, self.m
        ga = np.array(g)
        ha = np.array(h)
        msum = ga[:, None, None, None] + ga[None, None, :, None] + ha[None, :, None, None] + ha[None, None, None, :]
        # msum[i, j, i', j'] = g_i + g_i' + h_j + h_j'
        big = 4 * (n + m) + 16
        idx_i, idx_j = np.arange(n), np.arange(m)
        msum = msum.copy()
        msum[idx_i, :, idx_i, :] = big
        msum[:, idx_j, :, idx_j] = big
        self.allowed = msum.reshape(n, m, -1).min(axis=2) >= k + 2
        clash = msum.reshape(n, m, -1) < k + 4
        self.conflict = [[sum(1 << int(c) for c in np.flatnonzero(clash[i, j])) for j in range(m)] for i in range(n)]

    def run(self):
        if any(self.allowed[i].sum() < self.g[i] for i in range(self.n)):
            return None
        mat = np.zeros((self.n, self.m), dtype=np.int8)
        if self._row(0, list(self.h), 0, mat, [0] * self.m):
            return mat
        return None

    def _row(self, i, rem, forbid, mat, colsig):
        if i == self.n:
            return not any(rem)
        if not gale_ryser(self.g[i:], rem):
            return False
        m = self.m
        g, h = self.g, self.h
        prev = mat[i - 1] if i > 0 and g[i - 1] == g[i] else None
        chosen = []

        def cols(j, left, tight):
            # tight: the row so far equals the previous row of the same block
            if left == 0:
                yield tuple(chosen)
                return
            if m - j < left:
                return
            ok1 = self.allowed[i, j] and rem[j] > 0 and not forbid >> (i * m + j) & 1
            if ok1 and tight and prev[j] == 0:
                ok1 = False  # row would exceed its predecessor
            if ok1 and j > 0 and h[j - 1] == h[j] and colsig[j - 1] == colsig[j] and (not chosen or chosen[-1] != j - 1):
                ok1 = False  # column would exceed its identical left neighbour
            if ok1:
                chosen.append(j)
                yield from cols(j + 1, left - 1, tight and prev[j] == 1)
                chosen.pop()
            yield from cols(j + 1, left, tight and prev[j] == 0)

        for sel in cols(0, g[i], prev is not None):
            self.counter[0] += 1
            if self.counter[0] > self.budget:
                raise BudgetExceeded(f"margin search budget of {self.budget} nodes exhausted")
            new_forbid = forbid
            row = np.zeros(m, dtype=np.int8)
            for j in sel:
                row[j] = 1
                new_forbid |= self.conflict[i][j]
            mat[i] = row
            new_rem = list(rem)
            for j in sel:
                new_rem[j] -= 1
            new_sig = [2 * colsig[j] + int(row[j]) for j in range(m)]
            if self._row(i + 1, new_rem, new_forbid, mat, new_sig):
                return True
            mat[i] = 0
        return False


def _margin_pairs(n, m, k, total):
    for g in count_vectors(n, m, k, total):
        for h in count_vectors(m, n, k, total):
            if g[-1] + g[-2] + h[-1] + h[-2] < k:
                continue
            if gale_ryser(g, h):
                yield g, h


def margin_search(n, m, k, upper=None, budget=DEFAULT_MARGIN_BUDGET, log=None):
    """Minimum number of ones over all feasible matrices, by increasing total.

    Returns (matrix or None, total, proved, nodes). With ``upper`` given, only
    totals below it are searched and (None, upper, True, nodes) means nothing
    smaller exists.
    """
    log = log or (lambda **kw: None)
    lo = max(min_total(n, m, k), min_total(m, n, k))
    top = n * m if upper is None else upper - 1
    counter = [0]
    for total in range(lo, top + 1):
        pairs = 0
        for g, h in _margin_pairs(n, m, k, total):
            pairs += 1
            mat = _Search(list(g), list(h), k, budget, counter).run()
            if mat is not None:
                log(event="found", total=total, nodes=counter[0])
                return mat, total, True, counter[0]
        log(event="level_exhausted", total=total, margin_pairs=pairs, nodes=counter[0])
    return None, upper, True, counter[0]
