#!/usr/bin/env python3
"""Compare the direct kernel, the covariant span and the character count per multidegree."""
import argparse
import time

from christoffel import dimcount, geoderiv, symfunc


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("multidegrees", nargs="*", default=["2", "3", "1,1", "2,2", "2,3"])
    args = ap.parse_args()
    print(f"{'md':8s} {'orbits':>7s} {'kernel':>7s} {'span':>6s} {'char':>6s}  span<=kernel  time")
    for text in args.multidegrees:
        md = tuple(int(x) for x in text.split(","))
        t0 = time.perf_counter()
        kern = geoderiv.kernel_basis_geo(md)
        span = geoderiv.covariant_span(md)
        inside = geoderiv.span_in_kernel([span.generators[i] for i in span.independent], span.blocks)
        # colors of equal multiplicity form one symmetric block, as in the default kernel blocks
        char = dimcount.invariant_dim(symfunc.f_la(sum(md)), dimcount.BlockSpec.from_parts(md))
        print(f"{text:8s} {len(kern.basis_trees):>7d} {kern.dimension:>7d} {span.dimension:>6d} "
              f"{char:>6d} {inside!s:>12s}  {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
