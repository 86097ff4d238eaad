#!/usr/bin/env python3
"""Print homogeneous pieces of the Lie-admissible character and its arity dimensions."""
import argparse
import math

from christoffel import symfunc


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degree", type=int, default=8)
    ap.add_argument("--basis", choices=symfunc.BASES, default="e")
    args = ap.parse_args()
    F = symfunc.f_la(args.degree)
    egf = symfunc.egf_specialize(F)
    for n in range(1, args.degree + 1):
        piece = F.homogeneous(n).to(args.basis)
        print(f"[{n}] dim {math.factorial(n) * egf[n]}: {piece}")


if __name__ == "__main__":
    main()
