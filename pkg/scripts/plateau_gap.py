"""How much harder one generation of front progress gets as plateau bins
widen: plain ones counting (p_f1) vs bin counting (p_f2) per gamma."""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from bitswap_ea.genome import make_rng
from bitswap_ea.oracle import plateau_comparison

parser = argparse.ArgumentParser()
parser.add_argument("--n", type=int, default=24)
parser.add_argument("--gamma", type=int, nargs="+", default=[1, 2, 3, 4, 6])
parser.add_argument("--mu", type=int, default=4)
parser.add_argument("--lam", type=int, default=4)
parser.add_argument("--trials", type=int, default=20_000)
parser.add_argument("--seed", type=int, default=2024)
args = parser.parse_args()

print(f"n={args.n} mu={args.mu} lambda={args.lam} trials={args.trials}")
print(f"{'gamma':>6} {'p_f1':>8} {'p_f2':>8} {'gap':>8} {'gap/4se':>8}")
for gamma in args.gamma:
    if args.n % gamma != 0:
        print(f"{gamma:>6} skipped (does not divide n)")
        continue
    res = plateau_comparison(args.n, gamma, args.mu, args.lam, args.trials,
                             make_rng(args.seed))
    gap = res.p_f1 - res.p_f2
    print(f"{gamma:>6} {res.p_f1:>8.4f} {res.p_f2:>8.4f} {gap:>8.4f} "
          f"{gap / (4 * res.combined_se):>8.2f}")
