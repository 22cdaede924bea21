#!/usr/bin/env python3
"""Monte Carlo rate of one corrected MSB local collision vs the per-condition model."""

import argparse

from linsha import isolated_condition_count, monte_carlo_local_collision


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start-step", type=int, default=20)
    ap.add_argument("--trials", type=int, default=1 << 20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    mc = monte_carlo_local_collision(args.start_step, args.trials,
                                     seed=args.seed, workers=args.workers)
    e = isolated_condition_count(args.start_step)
    print(f"successes {mc.successes}/{mc.trials} = 2^{mc.log2_rate:.4f}")
    print(f"independent-conditions model: 2^-{e}")


if __name__ == "__main__":
    main()
