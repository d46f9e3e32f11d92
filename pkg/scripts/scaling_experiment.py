"""Generation-count scaling sweep with mu = lambda = 2, then the
a*mu*n*ln(n) + b*mu*n fit in both units."""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from bitswap_ea.harness import (
    ExperimentConfig,
    ensure_out_dir,
    fit_scaling,
    run_sweep,
    summarize,
    write_records_csv,
    write_summary_csv,
)

parser = argparse.ArgumentParser()
parser.add_argument("--n", type=int, nargs="+", default=[32, 64, 128, 256, 512])
parser.add_argument("--seeds", type=int, default=100)
parser.add_argument("--base-seed", type=int, default=20240817)
parser.add_argument("--workers", type=int, default=4)
parser.add_argument("--out", default="results/scaling")
args = parser.parse_args()

config = ExperimentConfig(
    n_values=tuple(args.n), mu_values=(2,), lam_values=(2,),
    seed_count=args.seeds, base_seed=args.base_seed, out_dir=args.out,
)
ensure_out_dir(args.out)

t0 = time.time()
records = run_sweep(config, workers=args.workers)
print(f"{len(records)} runs in {time.time() - t0:.1f}s (config_hash={config.config_hash})")

write_records_csv(os.path.join(args.out, "records.csv"), records, config.config_hash)
rows = summarize(records)
write_summary_csv(os.path.join(args.out, "summary.csv"), rows, config.config_hash)

print(f"{'n':>6} {'mean_gen':>10} {'median':>8} {'std':>8} {'cap_hits':>8}")
for row in rows:
    print(f"{row.n:>6} {row.mean_generations:>10.1f} {row.median_generations:>8.1f} "
          f"{row.std_generations:>8.1f} {row.cap_hits:>8}")

for unit in ("generations", "evaluations"):
    fit = fit_scaling(records, unit)
    print(f"{unit}: T = {fit.a:.4f} * mu * n * ln(n) + {fit.b:.4f} * mu * n   "
          f"(r^2 = {fit.r_squared:.5f})")
