"""Length of (1, 3/2) covered by matching intervals, by maximum block length."""

import argparse
import sys

from symdouble.blocks import enumerate_primitive, interval_endpoints
from symdouble.config import RunConfig
from symdouble.dynamics import HALF


def main() -> int:
    cfg = RunConfig.from_env()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=cfg.max_len or 18)
    args = ap.parse_args()
    per_length: dict[int, list] = {}
    for w in enumerate_primitive(args.max_len):
        per_length.setdefault(len(w), []).append(w)
    total = 0
    print("max_len,blocks,coverage,uncovered")
    count = 0
    for n in range(2, args.max_len + 1):
        for w in per_length.get(n, []):
            L, R = interval_endpoints(w)
            total += R - L
        count += len(per_length.get(n, []))
        frac = total / HALF
        print(f"{n},{count},{float(frac):.12f},{float(1 - frac):.12f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
