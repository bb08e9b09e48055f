"""Layer-count vectors, Gale-Ryser realizability and greedy 0-1 matrix filling."""
from __future__ import annotations

import numpy as np


def conjugate(seq, length):
    """Conjugate partition: entry j-1 counts the values of ``seq`` that are >= j, for j = 1..length."""
    return [sum(1 for x in seq if x >= j) for j in range(1, length + 1)]


def gale_ryser(rows, cols):
    """True iff some 0-1 matrix has row sums ``rows`` and column sums ``cols``.

    Dominance test: the sorted column sums must be majorized by the conjugate
    of the row sums.
    """
    n, m = len(rows), len(cols)
    if sum(rows) != sum(cols):
        return False
    if any(r < 0 or r > m for r in rows) or any(c < 0 or c > n for c in cols):
        return False
    conj = conjugate(rows, m)
    lhs = rhs = 0
    for c, r in zip(sorted(cols, reverse=True), conj):
        lhs += c
        rhs += r
        if lhs > rhs:
            return False
    return True


def greedy_fill(rows, cols):
    """Realize the margins row by row, each row taking the columns with largest remaining demand.

    Ties go to the lower column index. Returns an int8 matrix or None when the
    greedy gets stuck (which cannot happen when gale_ryser(rows, cols) holds).
    """
    n, m = len(rows), len(cols)
    rem = list(cols)
    mat = np.zeros((n, m), dtype=np.int8)
    for i, r in enumerate(rows):
        order = sorted(range(m), key=lambda j: (-rem[j], j))[:r]
        if len(order) < r or any(rem[j] == 0 for j in order):
            return None
        for j in order:
            mat[i, j] = 1
            rem[j] -= 1
    if any(rem):
        return None
    return mat


def min_total(length, upper, k):
    """Smallest sum of ``length`` values in [0, upper] whose two smallest add up to >= k, or None."""
    half = -(-k // 2)
    if half > upper:
        return None
    return (length - 1) * half + (k - half if k > half else 0)


def count_vectors(length, upper, k, total):
    """Nonincreasing vectors in [0, upper]^length with the given sum and pairwise sums >= k.

    Pairwise sums are all >= k exactly when the two smallest entries are, which
    forces every entry but the last to be at least ceil(k/2). Vectors come out
    most balanced first (ascending leading entry).
    """
    half = -(-k // 2)
    if length < 2:
        if length == 1 and 0 <= total <= upper:
            yield (total,)
        return
    out = [0] * length

    def rec(p, rem, cap):
        slots = length - p
        if p == length - 1:
            lo = max(0, k - out[p - 1])
            if lo <= rem <= cap:
                out[p] = rem
                yield tuple(out)
            return
        lo = half
        # remaining entries after p, excluding the last, are >= half
        min_after = (slots - 2) * half
        hi = min(cap, rem - min_after)
        start = max(lo, -(-rem // slots))
        for x in range(start, hi + 1):
            rest = rem - x
            if rest > (slots - 1) * x:
                continue
            out[p] = x
            yield from rec(p + 1, rest, x)

    yield from rec(0, total, upper)
