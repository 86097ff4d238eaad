#!/usr/bin/env python3
"""Per-element chain-rule and infinitesimal checks for small Gaussian multidegrees."""
import argparse

from christoffel.verify import VerifyConfig, chain_rule_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=2)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--order", type=int, default=1)
    args = ap.parse_args()
    cfg = VerifyConfig(n=args.pairs, seed=args.seed, seeds=args.seeds, order=args.order)
    rep, rows = chain_rule_rows(cfg)
    for r in rows:
        print(f"{r.kind:9s} {r.element:30s} kernel={r.in_kernel!s:5s} "
              f"infinitesimal={''.join('+' if x else '-' for x in r.infinitesimal)} chain_rule={r.chain_rule}")
    print(f"{rep.name}: {'PASS' if rep.ok else 'FAIL'} ({rep.checked} checked)")


if __name__ == "__main__":
    main()
