"""Tabulate the middle-branch mass against alpha, optionally with Birkhoff estimates.

Writes the CSV format of ``symdouble sweep`` so any plotter can draw the curve:
x = alpha_decimal, y = mu_decimal (and birkhoff_estimate when requested).
"""

import argparse
import sys

from symdouble import __version__
from symdouble.config import RunConfig
from symdouble.measure import parse_grid, records_to_csv, sweep


def main() -> int:
    cfg = RunConfig.from_env()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", default=cfg.grid or "1:2:1/200", help="lo:hi:step (default 1:2:1/200)")
    ap.add_argument("--birkhoff", type=int, default=0, help="simulation steps per point (0 = none)")
    ap.add_argument("--seed", type=int, default=cfg.seed)
    ap.add_argument("--mode", choices=["float", "exact"], default=cfg.mode)
    ap.add_argument("--out", default=cfg.out)
    args = ap.parse_args()
    records = sweep(grid=parse_grid(args.grid), birkhoff_iterations=args.birkhoff, seed=args.seed, mode=args.mode)
    header = [f"mu_curve.py symdouble {__version__}", f"grid={args.grid} birkhoff={args.birkhoff} seed={args.seed} mode={args.mode}"]
    text = records_to_csv(records, header)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
