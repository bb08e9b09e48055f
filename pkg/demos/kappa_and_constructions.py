"""Walk through kappa, the explicit constructions and their certificates on K_n x K_n.

    python demos/kappa_and_constructions.py --n 7
"""
import argparse

from wdimk import construction_for, hamming, kappa, kappa_bruteforce, verify, wdim_formula_knkn


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=6)
    args = ap.parse_args()
    n = args.n
    g = hamming(n, n)
    print(f"{g.describe()}: kappa formula {kappa(g)}, brute force {kappa_bruteforce(g)}")
    print(f"{'k':>3} {'formula':>8} {'|S|':>5} {'min pair':>9}  valid")
    for k in range(2, 2 * n + 1):
        s = construction_for(n, k, graph=g)
        if s is None:
            print(f"{k:>3} {wdim_formula_knkn(n, k):>8}     -         -  (no construction for this n)")
            continue
        cert = verify(g, s, k)
        print(f"{k:>3} {wdim_formula_knkn(n, k):>8} {len(s):>5} {cert.min_value:>9}  {cert.valid}")


if __name__ == "__main__":
    main()
