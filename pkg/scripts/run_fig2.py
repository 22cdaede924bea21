#!/usr/bin/env python3
"""Weight-vs-steps sweep; writes the CSV that the plotting notebook consumes."""

import argparse
import sys

from linsha import ExpansionKind, SearchParams, fig2_sweep
from linsha.codewords import sweep_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min-steps", type=int, default=16)
    ap.add_argument("--max-steps", type=int, default=64)
    ap.add_argument("--horizon", type=int, default=42)
    ap.add_argument("--budget-secs", type=float, default=60.0)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    rows = fig2_sweep(
        range(args.min_steps, args.max_steps + 1),
        SearchParams(budget_secs=args.budget_secs, seed=args.seed),
        ExpansionKind.SHA256_XOR,
        search_horizon=args.horizon,
    )
    csv = sweep_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(csv)


if __name__ == "__main__":
    main()
