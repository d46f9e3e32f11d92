"""Exact finite-sum runtime bounds next to their asymptotic forms, for both
elite-fraction regimes. The ratio column shows how loose each closed form is."""

import argparse
import csv
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from bitswap_ea.analytics import BoundParams, bound_sweep

parser = argparse.ArgumentParser()
parser.add_argument("--n", type=int, nargs="+", default=[16, 32, 64, 128, 256, 512, 1024])
parser.add_argument("--mu", type=int, default=4)
parser.add_argument("--lam", type=int, default=4)
parser.add_argument("--c", type=float, default=1.0, help="delta = c/mu regime constant")
parser.add_argument("--eps1", type=float, default=0.5, help="delta = mu^-eps1 regime exponent")
parser.add_argument("--csv", default=None, help="optional output path")
args = parser.parse_args()

params = []
for n in args.n:
    params.append(BoundParams.constant_elite_fraction(args.mu, args.lam, n, c=args.c))
    params.append(BoundParams.power_law_elite_fraction(args.mu, args.lam, n, eps1=args.eps1))

rows = bound_sweep(params)
print(f"{'n':>6} {'delta':>8} {'kind':>8} {'exact':>14} {'asymptotic':>14} {'ratio':>8}")
for row in rows:
    print(f"{row['n']:>6} {row['delta']:>8.4f} {row['kind']:>8} "
          f"{row['exact_sum']:>14.2f} {row['asymptotic_value']:>14.2f} {row['ratio']:>8.4f}")

if args.csv:
    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    print(f"written to {args.csv}")
