#!/usr/bin/env python3
"""Engine versus exhaustive best bisection on small random digraphs."""

import argparse

from disect.config import EngineConfig
from disect.engine import optimal_bisect
from disect.instances import small_digraph
from disect.oracle import exact_best_bisection


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=200)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--no-polish", action="store_true")
    args = ap.parse_args()

    equal = worse = 0
    gaps = []
    for seed in range(1, args.instances + 1):
        D = small_digraph(seed, args.max_n)
        bis, _ = optimal_bisect(D, EngineConfig(seed=seed, polish=not args.no_polish))
        opt = exact_best_bisection(D).value
        assert bis.stats.min_dir <= opt, f"seed {seed}: engine beat the oracle"
        equal += bis.stats.min_dir == opt
        worse += bis.stats.min_dir < opt
        gaps.append(opt - bis.stats.min_dir)
    print(f"optimal on {equal}/{args.instances}; below optimum on {worse}; "
          f"mean shortfall {sum(gaps) / len(gaps):.3f}, max {max(gaps)}")


if __name__ == "__main__":
    main()
