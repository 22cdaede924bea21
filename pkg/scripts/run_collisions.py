#!/usr/bin/env python3
"""Generate verified collisions for the fully modular-linearised variant."""

import argparse
import random

from linsha import find_collision_add_linear
from linsha.disturbance import CollisionError, random_block


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--multiple", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--relaxed", action="store_true",
                    help="use the order-16 kernel (does not collide; kept for study)")
    args = ap.parse_args()

    rng = random.Random(args.seed)
    ok = 0
    for _ in range(args.count):
        try:
            res = find_collision_add_linear(random_block(rng), args.multiple,
                                            strict=not args.relaxed)
            ok += 1
        except CollisionError as exc:
            print(f"miss: {exc}")
    print(f"{ok}/{args.count} collisions (multiple {args.multiple})")
    if ok:
        print("sample:", res.to_json())


if __name__ == "__main__":
    main()
