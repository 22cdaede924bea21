#!/usr/bin/env python3
"""Low-weight codeword search driver with the validated default budgets."""

import argparse

from linsha import ExpansionKind, SearchParams, build_generator, low_weight_search


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=40)
    ap.add_argument("--kind", default="sha256-xor", choices=("sha256-xor", "sha1-xor"))
    ap.add_argument("--iterations", type=int, default=60000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bootstrap", type=int, nargs="*", default=None,
                    help="shorter lengths to search first (default: 40 when steps > 40)")
    args = ap.parse_args()

    boot = args.bootstrap
    if boot is None:
        boot = [40] if args.steps > 40 else []
    g = build_generator(ExpansionKind(args.kind), args.steps)
    res = low_weight_search(
        g, SearchParams(iterations=args.iterations, seed=args.seed,
                        bootstrap_lengths=tuple(boot))
    )
    print(f"weight {res.weight} at {res.n_steps} steps "
          f"(seed {res.seed}, {res.iterations_run} iterations, origin {res.origin})")
    for i in range(0, res.n_steps, 8):
        print(" ".join(f"{w:08x}" for w in res.words[i:i + 8]))


if __name__ == "__main__":
    main()
