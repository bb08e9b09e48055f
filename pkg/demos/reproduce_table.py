"""Fill one table of wdim_k(K_n x K_m) with the F_gh solver and diff it against the shipped values.

    python demos/reproduce_table.py --n 5 --m 5..10
"""
import argparse
import time

from wdimk.cli import load_expected, parse_range, run_table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--m", default=None, help="m range, e.g. 5..10 (default n..n+5)")
    args = ap.parse_args()
    n = args.n
    ms = parse_range(args.m) if args.m else list(range(n, n + 6))
    ks = list(range(2, 2 * n + 1))
    t0 = time.perf_counter()
    rep = run_table(n, ms, ks, "ilp:fgh", load_expected("shipped", n))
    grid = {(c["k"], c["m"]): c for c in rep["cells"]}
    print("k\\m " + "".join(f"{m:>5}" for m in ms))
    for k in ks:
        row = ""
        for m in ms:
            c = grid[(k, m)]
            mark = "!" if "expected" in c and c["expected"] != c["value"] else " "
            row += f"{c['value'] if c['value'] is not None else '-':>4}{mark}"
        print(f"{k:>3} {row}")
    print(f"{len(rep['cells'])} cells in {time.perf_counter() - t0:.1f}s; '!' marks a disagreement")
    for mm in rep["mismatches"]:
        print(f"  k={mm['k']} m={mm['m']}: solver {mm['value']}, shipped {mm['expected']}")


if __name__ == "__main__":
    main()
