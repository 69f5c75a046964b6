"""Cascade intervals from a block and their limit, compared with the Thue-Morse constant."""

import argparse
import sys

from symdouble.blocks import cascade, cascade_limit, thue_morse_constant
from symdouble.config import RunConfig


def main() -> int:
    cfg = RunConfig.from_env()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("block", nargs="?", default="11")
    ap.add_argument("--depth", type=int, default=6, help="number of cascade steps")
    ap.add_argument("--precision-bits", type=int, default=cfg.precision_bits)
    args = ap.parse_args()
    for J in cascade(args.block, args.depth):
        print(f"{J.omega:>{2 ** args.depth * len(args.block)}}  L={float(J.L):.15f}  R={float(J.R):.15f}")
    limit = cascade_limit(args.block, args.precision_bits)
    pstar = thue_morse_constant(args.precision_bits)
    print(f"limit of the cascade: {limit.decimal(15)}")
    print(f"Thue-Morse constant p*: {pstar.decimal(15)}; 1/(2 p*) = {float(1 / (2 * pstar.value)):.15f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
