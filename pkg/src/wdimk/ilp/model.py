"""Solver-neutral integer linear model: variables, linear constraints, objective."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str = "binary"  # "binary" or "integer" (nonnegative)
    upper: int | None = None  # integer variables only

    def __post_init__(self):
        if self.kind not in ("binary", "integer"):
            raise ValueError(f"unknown variable kind {self.kind!r}")


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple  # ((var_index, coef), ...) in construction order, no zero coefs
    sense: str  # ">=" or "="
    rhs: int

    def activity(self, x):
        return sum(c * x[v] for v, c in self.terms)

    def satisfied(self, x):
        a = self.activity(x)
        return a >= self.rhs if self.sense == ">=" else a == self.rhs


@dataclass(frozen=True)
class IlpModel:
    variables: tuple
    objective: tuple  # ((var_index, coef), ...), minimized
    constraints: tuple
    meta: dict = field(default_factory=dict, compare=True)

    def __post_init__(self):
        nv = len(self.variables)
        names = [v.name for v in self.variables]
        if len(set(names)) != nv:
            raise ValueError("variable names must be unique")
        for c in self.constraints:
            for v, coef in c.terms:
                if not 0 <= v < nv:
                    raise ValueError(f"constraint {c.name} references undeclared variable {v}")
                if int(coef) != coef:
                    raise ValueError(f"constraint {c.name} has a non-integer coefficient")

    @property
    def formulation(self):
        return self.meta.get("formulation")

    @property
    def dims(self):
        d = self.meta.get("dims")
        return tuple(d) if d is not None else None

    @property
    def k(self):
        return self.meta.get("k")

    def var_index(self, name):
        for i, v in enumerate(self.variables):
            if v.name == name:
                return i
        raise KeyError(name)

    def matrix(self):
        """Dense (A, senses, b) view of the constraints."""
        a = np.zeros((len(self.constraints), len(self.variables)), dtype=np.int64)
        for r, c in enumerate(self.constraints):
            for v, coef in c.terms:
                a[r, v] += coef
        senses = [c.sense for c in self.constraints]
        b = np.array([c.rhs for c in self.constraints], dtype=np.int64)
        return a, senses, b

    def evaluate(self, x):
        """Objective value of an assignment, or None if a constraint is violated."""
        for c in self.constraints:
            if not c.satisfied(x):
                return None
        return sum(coef * x[v] for v, coef in self.objective)

    def s_grid(self):
        """Variable index of s_(i,j) laid out as an n x m list, for Hamming formulations."""
        n, m = self.dims
        return [[self.var_index(f"s_{i}_{j}") for j in range(m)] for i in range(n)]

    def summary(self):
        kinds = [v.kind for v in self.variables]
        return {
            "formulation": self.formulation,
            "dims": list(self.dims) if self.dims else None,
            "k": self.k,
            "variables": len(self.variables),
            "binaries": kinds.count("binary"),
            "integers": kinds.count("integer"),
            "constraints": len(self.constraints),
        }
