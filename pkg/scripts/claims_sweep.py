#!/usr/bin/env python3
"""Evaluate every certificate inequality on many random split instances.

Prints per-record pass/fail/not-applicable counts and how often the ordered
gap exceeded m/(2d+1).
"""

import argparse
from collections import Counter, defaultdict

from disect.engine import build_split, verify_claims
from disect.instances import claims_digraph


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=1000)
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("--max-n", type=int, default=200)
    args = ap.parse_args()

    tally: dict[str, Counter] = defaultdict(Counter)
    modes, long_branch = Counter(), 0
    for seed in range(args.start, args.start + args.instances):
        ctx = build_split(claims_digraph(seed, args.max_n))
        modes[ctx.gap_mode] += 1
        long_branch += ctx.theta > ctx.m / (2 * ctx.d + 1)
        for r in verify_claims(ctx):
            tally[r.name][r.status] += 1
            if r.failed:
                print(f"seed {seed}: {r.name} failed: {r.lhs} {r.relation} {r.rhs}")
    print(f"gap modes: {dict(modes)}; theta > m/(2d+1) on {long_branch}")
    width = max(map(len, tally))
    for name, c in tally.items():
        print(f"{name:<{width}}  " + "  ".join(f"{k}={v}" for k, v in sorted(c.items())))


if __name__ == "__main__":
    main()
