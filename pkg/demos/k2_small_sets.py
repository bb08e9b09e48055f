"""Show weak 2-resolving sets of K_5 x K_m smaller than the shipped reference values.

Each set is checked twice: by the package and by a plain all-pairs sum over
hop distances computed independently from the coordinates.

    python demos/k2_small_sets.py
"""
import argparse
import itertools

import numpy as np

from wdimk import hamming, verify
from wdimk.cli import load_expected
from wdimk.ilp.margins import margin_search


def independent_min(n, m, cells):
    coords = list(itertools.product(range(n), range(m)))
    dist = lambda a, b: (a[0] != b[0]) + (a[1] != b[1])
    return min(sum(abs(dist(x, z) - dist(y, z)) for z in cells) for x, y in itertools.combinations(coords, 2))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--m", type=int, nargs="+", default=[6, 7, 8, 9])
    args = ap.parse_args()
    n = args.n
    ref = load_expected("shipped", n)
    for m in args.m:
        mat, total, proved, _ = margin_search(n, m, 2)
        cells = [tuple(int(v) for v in c) for c in np.argwhere(mat)]
        g = hamming(n, m)
        ok = verify(g, [g.index(*c) for c in cells], 2).valid
        print(f"m={m}: optimum {total} (proved={proved}), shipped {ref.get((2, m))}, "
              f"conjectured m={m}; verify={ok}, independent min pair = {independent_min(n, m, cells)}")
        print(f"   set: {cells}")


if __name__ == "__main__":
    main()
