#!/usr/bin/env python3
"""Print the Gaussian and cumulant invariant dimension tables with class coefficients."""
import argparse
import time

from christoffel import dimcount


def show(title, comps, total, dt):
    print(f"== {title}: total {total} ({dt:.2f}s)")
    for c in comps:
        coeffs = "  ".join(f"{';'.join(','.join(map(str, cl)) for cl in classes)}:{coeff}"
                           for classes, _, coeff in c.coefficients)
        print(f"  {c.spec.name():10s} {c.dimension:>8d}   {coeffs}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gaussian", type=int, default=4, help="number of pairs")
    ap.add_argument("--cumulant", type=int, default=7, help="number of noises")
    args = ap.parse_args()
    t0 = time.perf_counter()
    g = dimcount.gaussian_components(args.gaussian)
    show(f"Gaussian, n={args.gaussian}", g, sum(c.dimension for c in g), time.perf_counter() - t0)
    t0 = time.perf_counter()
    total, comps = dimcount.cumulant_total(args.cumulant)
    show(f"cumulant, n={args.cumulant}", comps, total, time.perf_counter() - t0)


if __name__ == "__main__":
    main()
