"""Depth-first branch and bound for unit-cost 0-1 covering programs.

Integer variables defined by a linkage equality (x = sum of binaries, as in
the layer-count formulation) are substituted out first, leaving rows
``A s >= b`` over binaries only. Each node then

* fixes to 1 any free variable without which some row can no longer reach its
  right-hand side (and to 0 a variable with a negative coefficient that would
  make a row unreachable),
* bounds the number of further ones from below by a greedy packing of rows
  with disjoint free supports, each row needing ceil(residual / largest free
  coefficient) more ones. The single best row alone is the classic ceiling
  bound; the packing can only raise it.

For Hamming models, rows and columns of the s-grid can be permuted freely, so
only grids whose rows and columns are both lexicographically nonincreasing
are explored; every orbit contains one.
"""
from __future__ import annotations

import numpy as np

from ..errors import BudgetExceeded, Infeasible

DEFAULT_BNB_BUDGET = 10_000_000


class Presolved:
    """Pure-binary view of a model after substituting linkage-defined integers."""

    def __init__(self, model):
        a, senses, b = model.matrix()
        kinds = [v.kind for v in model.variables]
        uppers = [v.upper for v in model.variables]
        nv = len(kinds)
        a = a.copy()
        b = b.copy()
        eq = np.array([s == "=" for s in senses])
        alive = np.ones(len(b), dtype=bool)
        definitions = {}  # integer var -> (coefficients over all vars, constant)
        extra_rows = []
        for x in [i for i in range(nv) if kinds[i] == "integer"]:
            rows = [r for r in np.flatnonzero(alive & eq) if abs(a[r, x]) == 1]
            if not rows:
                raise ValueError(f"integer variable {model.variables[x].name} is not defined by a linkage equality")
            r = rows[0]
            piv = a[r, x]
            eq_row, eq_rhs = a[r].copy(), b[r]
            alive[r] = False
            hit = np.flatnonzero(a[:, x])
            for q in hit:
                if q == r:
                    continue
                f = a[q, x] // piv
                a[q] -= f * eq_row
                b[q] -= f * eq_rhs
            for q, (row, rhs) in enumerate(extra_rows):
                if row[x]:
                    f = row[x] // piv
                    extra_rows[q] = (row - f * eq_row, rhs - f * eq_rhs)
            # x = (eq_rhs - rest) / piv, with rest = eq_row without x
            rest = eq_row.copy()
            rest[x] = 0
            expr = -rest * piv  # piv is +-1, so 1/piv == piv
            const = eq_rhs * piv
            definitions[x] = (expr, const)
            extra_rows.append((expr.copy(), -const))  # x >= 0
            if uppers[x] is not None:
                extra_rows.append((-expr, const - uppers[x]))  # x <= upper
            for y, (e, c) in list(definitions.items()):
                if y != x and e[x]:
                    f = e[x]
                    e = e.copy()
                    e[x] = 0
                    definitions[y] = (e + f * expr, c + f * const)
        rows_a = [a[r] for r in np.flatnonzero(alive)]
        rows_b = [b[r] for r in np.flatnonzero(alive)]
        rows_s = [senses[r] for r in np.flatnonzero(alive)]
        for row, rhs in extra_rows:
            rows_a.append(row)
            rows_b.append(rhs)
            rows_s.append(">=")
        final_a, final_b = [], []
        for row, rhs, s in zip(rows_a, rows_b, rows_s):
            if any(row[x] for x in definitions):
                raise ValueError("integer variable survived substitution")
            if s == "=":
                final_a += [row, -row]
                final_b += [rhs, -rhs]
            else:
                final_a.append(row)
                final_b.append(rhs)
        binaries = [i for i in range(nv) if kinds[i] == "binary"]
        full_a = np.array(final_a, dtype=np.int64).reshape(len(final_a), nv)
        full_b = np.array(final_b, dtype=np.int64)
        sub = full_a[:, binaries]
        # drop rows that hold for every 0-1 assignment
        min_act = np.minimum(sub, 0).sum(axis=1)
        keep = min_act < full_b
        sub, full_b = sub[keep], full_b[keep]
        if len(sub):
            sub, idx = np.unique(np.column_stack([sub, full_b]), axis=0, return_index=True)
            order = np.argsort(idx)
            sub = sub[order]
            full_b = sub[:, -1]
            sub = sub[:, :-1]
        cost = np.zeros(nv, dtype=np.int64)
        for v, c in model.objective:
            cost[v] += c
        if any(cost[x] for x in definitions):
            raise ValueError("objective must not involve integer variables")
        if set(np.unique(cost[binaries]).tolist()) - {0, 1} or not cost[binaries].all():
            raise ValueError("generic solver needs the objective to be the plain sum of all binaries")
        self.nv = nv
        self.binaries = binaries
        self.A = sub
        self.b = full_b
        self.definitions = definitions

    def expand(self, s_values):
        """Full assignment (binaries plus recovered integers) from binary values."""
        x = np.zeros(self.nv, dtype=np.int64)
        x[self.binaries] = s_values
        for v, (expr, const) in self.definitions.items():
            x[v] = int(expr @ x) + const
        return x


class BranchAndBound:
    def __init__(self, pre, grid=None, budget=DEFAULT_BNB_BUDGET, log=None):
        self.pre = pre
        self.A = pre.A
        self.b = pre.b
        self.nb = self.A.shape[1]
        self.pos = np.maximum(self.A, 0)
        self.neg = np.minimum(self.A, 0)
        self.budget = budget
        self.log = log or (lambda **kw: None)
        self.nodes = 0
        self.grid = None
        if grid is not None:
            col = {v: c for c, v in enumerate(pre.binaries)}
            self.grid = [[col[v] for v in row] for row in grid]
            self.order = [v for row in self.grid for v in row]
            self.cell = {v: (i, j) for i, row in enumerate(self.grid) for j, v in enumerate(row)}
        else:
            counts = (self.A != 0).sum(axis=0)
            self.order = sorted(range(self.nb), key=lambda v: (-counts[v], v))
        self.posmask = [sum(1 << int(v) for v in np.flatnonzero(row)) for row in self.pos]

    # state helpers -----------------------------------------------------------
    def _fix(self, v, val, trail):
        self.value[v] = val
        self.free &= ~(1 << v)
        self.free_arr[v] = False
        if val:
            self.fixed_act += self.A[:, v]
            self.max_act += self.neg[:, v]
            self.ones += 1
        else:
            self.max_act -= self.pos[:, v]
        trail.append(v)

    def _undo(self, trail, upto):
        while len(trail) > upto:
            v = trail.pop()
            val = self.value[v]
            self.value[v] = -1
            self.free |= 1 << v
            self.free_arr[v] = True
            if val:
                self.fixed_act -= self.A[:, v]
                self.max_act -= self.neg[:, v]
                self.ones -= 1
            else:
                self.max_act += self.pos[:, v]

    def _propagate(self, trail):
        """Fix forced variables; False when some row becomes unreachable."""
        while True:
            slack = self.max_act - self.b
            if (slack < 0).any():
                return False
            free = np.flatnonzero(self.free_arr)
            if free.size == 0:
                return True
            tight = slack < self.pos[:, free].max(axis=1, initial=0)
            must1 = np.zeros(free.size, dtype=bool)
            if tight.any():
                must1 = (self.pos[np.ix_(tight, free)] > slack[tight, None]).any(axis=0)
            must0 = (-self.neg[:, free] > slack[:, None]).any(axis=0)
            if (must1 & must0).any():
                return False
            if not must1.any() and not must0.any():
                return True
            for v in free[must1]:
                self._fix(int(v), 1, trail)
            for v in free[must0]:
                self._fix(int(v), 0, trail)

    def _bound(self):
        res = self.b - self.fixed_act
        open_rows = np.flatnonzero(res > 0)
        if open_rows.size == 0:
            return 0
        free = self.free_arr
        maxc = np.where(free[None, :], self.pos[open_rows], 0).max(axis=1)
        need = -(-res[open_rows] // np.maximum(maxc, 1))
        total = 0
        used = 0
        fmask = self.free
        for q in np.argsort(-need, kind="stable"):
            sup = self.posmask[open_rows[q]] & fmask
            if sup & used:
                continue
            used |= sup
            total += int(need[q])
        return total

    def _lex_ok(self, v, val):
        if self.grid is None:
            return True
        i, j = self.cell[v]
        g, value = self.grid, self.value
        if i > 0:
            tied = all(value[g[i][c]] == value[g[i - 1][c]] for c in range(j))
            if tied and val > value[g[i - 1][j]]:
                return False
        if j > 0:
            tied = all(value[g[r][j]] == value[g[r][j - 1]] for r in range(i))
            if tied and val > value[g[i][j - 1]]:
                return False
        return True

    # search ------------------------------------------------------------------
    def greedy(self):
        """Cheap feasible cover: repeatedly take the variable closing the most residual."""
        x = np.zeros(self.nb, dtype=np.int64)
        act = np.zeros(len(self.b), dtype=np.int64)
        while True:
            res = np.maximum(self.b - act, 0)
            if not res.any():
                break
            gain = np.minimum(self.pos, res[:, None]).sum(axis=0)
            gain[x == 1] = -1
            v = int(np.argmax(gain))
            if gain[v] <= 0:
                return None
            x[v] = 1
            act += self.A[:, v]
        for v in range(self.nb - 1, -1, -1):
            if x[v] and ((act - self.A[:, v]) >= self.b).all():
                x[v] = 0
                act -= self.A[:, v]
        return x

    def run(self, hint=None):
        nb = self.nb
        if ((self.pos.sum(axis=1)) < self.b).any():
            raise Infeasible("some constraint cannot be met even with every variable set to 1")
        self.value = [-1] * nb
        self.free = (1 << nb) - 1
        self.free_arr = np.ones(nb, dtype=bool)
        self.fixed_act = np.zeros(len(self.b), dtype=np.int64)
        self.max_act = self.pos.sum(axis=1).astype(np.int64)
        self.ones = 0
        self.best = None
        self.best_value = nb + 1
        for cand in (hint, self.greedy()):
            if cand is not None and (self.A @ cand >= self.b).all() and cand.sum() < self.best_value:
                self.best, self.best_value = np.array(cand), int(cand.sum())
        self.log(event="start", incumbent=self.best_value if self.best is not None else None)
        trail = []
        proved = True
        if self._propagate(trail):
            try:
                self._dfs(0, trail)
            except BudgetExceeded:
                proved = False
        return self.best, proved

    def _dfs(self, p, trail):
        if (self.fixed_act >= self.b).all():
            if self.ones < self.best_value:
                self.best = np.array([1 if x == 1 else 0 for x in self.value])
                self.best_value = self.ones
                self.log(event="incumbent", value=self.best_value, nodes=self.nodes)
            return
        if self.ones + self._bound() >= self.best_value:
            return
        while p < self.nb and self.value[self.order[p]] != -1:
            v = self.order[p]
            if not self._lex_ok(v, self.value[v]):
                return
            p += 1
        if p == self.nb:
            return
        v = self.order[p]
        for val in (1, 0):
            if not self._lex_ok(v, val):
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(f"branch-and-bound budget of {self.budget} nodes exhausted")
            mark = len(trail)
            self._fix(v, val, trail)
            if self._propagate(trail):
                self._dfs(p + 1, trail)
            self._undo(trail, mark)
