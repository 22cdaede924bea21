#!/usr/bin/env python3
"""Single-bit expansion weight census over every kind and both step counts."""

from linsha import ExpansionKind, single_bit_census

LENGTHS = {
    ExpansionKind.SHA1_XOR: (40, 80),
    ExpansionKind.SHA1_ADD: (40, 80),
    ExpansionKind.SHA256_XOR: (40, 64),
    ExpansionKind.SHA256_ADD: (40, 64),
    ExpansionKind.SHA256_ADD_ID_SIGMA: (40, 64),
}


def main() -> None:
    print(f"{'kind':24} {'steps':>5} {'min':>5} {'max':>5}")
    for kind, lengths in LENGTHS.items():
        for n in lengths:
            lo, hi = single_bit_census(kind, n)
            print(f"{kind.value:24} {n:>5} {lo:>5} {hi:>5}")


if __name__ == "__main__":
    main()
