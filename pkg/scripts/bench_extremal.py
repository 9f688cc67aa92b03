#!/usr/bin/env python3
"""Ratio achieved on the extremal family versus the guaranteed d/(2(2d+1)).

Writes CSV (d,k,n,m,minDir,ratio,bound,margin,upper,seconds) to stdout or --out.
"""

import argparse
import csv
import sys
import time

from disect.config import EngineConfig
from disect.constructions import extremal_bisection_bound, extremal_family
from disect.engine import optimal_bisect


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ds", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--ks", type=int, nargs="+", default=[1, 3, 10, 30, 100])
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--epsilon", type=float, default=0.02)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["d", "k", "n", "m", "minDir", "ratio", "bound", "margin", "upper", "seconds"])
    config = EngineConfig(epsilon=args.epsilon, seed=args.seed)
    for d in args.ds:
        for k in args.ks:
            D, _ = extremal_family(d, k)
            t0 = time.perf_counter()
            bis, _ = optimal_bisect(D, config)
            dt = time.perf_counter() - t0
            ratio, bound = bis.stats.min_dir / D.m, d / (2 * (2 * d + 1))
            w.writerow([d, k, D.n, D.m, bis.stats.min_dir, f"{ratio:.5f}", f"{bound:.5f}",
                        f"{ratio - bound:+.5f}", extremal_bisection_bound(d, k), f"{dt:.2f}"])
            fh.flush()
    if args.out:
        fh.close()


if __name__ == "__main__":
    main()
