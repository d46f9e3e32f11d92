"""Experiment orchestration: seeded sweeps over parameter grids, CSV
persistence, and scaling-law fits.

Seeds are derived per (n, mu, lambda, seed_index) cell from the base seed, so
extending a grid never changes results already computed. Every emitted file
starts with a `# config_hash=` line naming the configuration that produced it.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .engine import EngineConfig, RunRecord, run
from .fitness import KINDS, FitnessSpec
from .genome import mix_seed

_CONFIG_KEYS = {
    "n": "list of bitstring lengths",
    "mu": "list of parent population sizes",
    "lambda": "list of pool sizes (even)",
    "fitness": "onemax or plateau_royal_road",
    "gamma": "bin width, plateau only",
    "seed_count": "runs per grid cell",
    "base_seed": "root of the per-cell seed derivation",
    "generation_cap": "cap override, null for the default policy",
    "out_dir": "directory for emitted CSVs",
}


def _as_tuple(value) -> tuple[int, ...]:
    if isinstance(value, int):
        return (value,)
    return tuple(int(v) for v in value)


@dataclass(frozen=True, slots=True)
class ExperimentConfig:
    """Sweep definition: a full grid of (n, mu, lambda) cells."""

    n_values: tuple[int, ...]
    mu_values: tuple[int, ...]
    lam_values: tuple[int, ...]
    fitness: str = "onemax"
    gamma: int | None = None
    seed_count: int = 1
    base_seed: int = 0
    generation_cap: int | None = None
    out_dir: str = "results"

    def __post_init__(self) -> None:
        if not self.n_values or not self.mu_values or not self.lam_values:
            raise ValueError("all grids must be non-empty")
        if self.seed_count < 1:
            raise ValueError(f"seed_count must be >= 1, got {self.seed_count}")
        if self.fitness not in KINDS:
            raise ValueError(f"unknown fitness kind {self.fitness!r}")
        for n in self.n_values:
            self.fitness_spec(n)  # raises on bad n/gamma combinations

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        unknown = set(raw) - set(_CONFIG_KEYS)
        if unknown:
            known = ", ".join(sorted(_CONFIG_KEYS))
            raise ValueError(
                f"unknown config keys {sorted(unknown)}; known keys: {known}"
            )
        missing = {"n", "mu", "lambda"} - set(raw)
        if missing:
            raise ValueError(f"config missing required keys {sorted(missing)}")
        return cls(
            n_values=_as_tuple(raw["n"]),
            mu_values=_as_tuple(raw["mu"]),
            lam_values=_as_tuple(raw["lambda"]),
            fitness=raw.get("fitness", "onemax"),
            gamma=raw.get("gamma"),
            seed_count=raw.get("seed_count", 1),
            base_seed=raw.get("base_seed", 0),
            generation_cap=raw.get("generation_cap"),
            out_dir=raw.get("out_dir", "results"),
        )

    @classmethod
    def from_json(cls, path: str) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValueError("config file must hold a single JSON object")
        return cls.from_dict(raw)

    def to_dict(self) -> dict:
        return {
            "n": list(self.n_values),
            "mu": list(self.mu_values),
            "lambda": list(self.lam_values),
            "fitness": self.fitness,
            "gamma": self.gamma,
            "seed_count": self.seed_count,
            "base_seed": self.base_seed,
            "generation_cap": self.generation_cap,
            "out_dir": self.out_dir,
        }

    @property
    def config_hash(self) -> str:
        canon = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()[:12]

    def fitness_spec(self, n: int) -> FitnessSpec:
        if self.fitness == "onemax":
            if self.gamma is not None and self.gamma != 1:
                raise ValueError("gamma is only meaningful for plateau fitness")
            return FitnessSpec.onemax(n)
        return FitnessSpec.plateau(n, self.gamma if self.gamma is not None else 1)

    def cells(self) -> list[tuple[int, int, int]]:
        return [
            (n, mu, lam)
            for n in self.n_values
            for mu in self.mu_values
            for lam in self.lam_values
        ]

    def cell_seed(self, n: int, mu: int, lam: int, seed_index: int) -> int:
        return mix_seed(self.base_seed, n, mu, lam, seed_index)


def _run_cell(args: tuple) -> list[RunRecord]:
    (n, mu, lam, fitness, gamma, cap, base_seed, seed_count, record_trace) = args
    spec = (
        FitnessSpec.onemax(n)
        if fitness == "onemax"
        else FitnessSpec.plateau(n, gamma if gamma is not None else 1)
    )
    cfg = EngineConfig(spec=spec, mu=mu, lam=lam, generation_cap=cap)
    return [
        run(cfg, mix_seed(base_seed, n, mu, lam, i), record_trace=record_trace)
        for i in range(seed_count)
    ]


def run_sweep(
    config: ExperimentConfig, workers: int = 1, record_trace: bool = False
) -> list[RunRecord]:
    """One run per (n, mu, lambda, seed) cell, in grid order."""
    jobs = [
        (n, mu, lam, config.fitness, config.gamma, config.generation_cap,
         config.base_seed, config.seed_count, record_trace)
        for (n, mu, lam) in config.cells()
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_cell = list(pool.map(_run_cell, jobs))
    else:
        per_cell = [_run_cell(j) for j in jobs]
    return [rec for cell in per_cell for rec in cell]


@dataclass(frozen=True, slots=True)
class CellSummary:
    n: int
    mu: int
    lam: int
    seed_count: int
    mean_generations: float
    median_generations: float
    std_generations: float
    mean_evaluations: float
    cap_hits: int


def summarize(records: list[RunRecord]) -> list[CellSummary]:
    """Per-cell statistics, cells ordered by first appearance."""
    cells: dict[tuple[int, int, int], list[RunRecord]] = {}
    for rec in records:
        cells.setdefault((rec.spec.n, rec.mu, rec.lam), []).append(rec)
    out = []
    for (n, mu, lam), group in cells.items():
        gens = [r.generations for r in group]
        out.append(
            CellSummary(
                n=n,
                mu=mu,
                lam=lam,
                seed_count=len(group),
                mean_generations=statistics.fmean(gens),
                median_generations=float(statistics.median(gens)),
                std_generations=statistics.pstdev(gens),
                mean_evaluations=statistics.fmean(r.evaluations for r in group),
                cap_hits=sum(r.terminated == "generation_cap" for r in group),
            )
        )
    return out


def ensure_out_dir(path: str) -> None:
    os.makedirs(path, exist_ok=True)
    if not os.access(path, os.W_OK):
        raise PermissionError(f"output directory {path!r} is not writable")


def _open_stamped(path: str, config_hash: str):
    fh = open(path, "w", newline="", encoding="utf-8")
    fh.write(f"# config_hash={config_hash}\n")
    return fh

RECORD_COLUMNS = [
    "n", "mu", "lambda", "seed_index", "seed",
    "generations", "evaluations", "terminated",
]

SUMMARY_COLUMNS = [
    "n", "mu", "lambda", "seed_count", "mean_generations",
    "median_generations", "std_generations", "mean_evaluations",
    "cap_hits", "config_hash",
]

TRACE_COLUMNS = [
    "generation", "k", "alpha", "alpha_star", "beta1", "beta_minus1",
    "best_fitness", "best_aux",
]


def write_records_csv(path: str, records: list[RunRecord], config_hash: str) -> None:
    with _open_stamped(path, config_hash) as fh:
        w = csv.writer(fh)
        w.writerow(RECORD_COLUMNS)
        index: dict[tuple[int, int, int], int] = {}
        for rec in records:
            cell = (rec.spec.n, rec.mu, rec.lam)
            i = index.get(cell, 0)
            index[cell] = i + 1
            w.writerow([rec.spec.n, rec.mu, rec.lam, i, rec.seed,
                        rec.generations, rec.evaluations, rec.terminated])


def write_summary_csv(path: str, rows: list[CellSummary], config_hash: str) -> None:
    with _open_stamped(path, config_hash) as fh:
        w = csv.writer(fh)
        w.writerow(SUMMARY_COLUMNS)
        for r in rows:
            w.writerow([r.n, r.mu, r.lam, r.seed_count, r.mean_generations,
                        r.median_generations, r.std_generations,
                        r.mean_evaluations, r.cap_hits, config_hash])


def write_trace_csv(path: str, record: RunRecord, config_hash: str) -> None:
    with _open_stamped(path, config_hash) as fh:
        w = csv.writer(fh)
        w.writerow(TRACE_COLUMNS)
        for g, p in enumerate(record.trace):
            w.writerow([g, p.k, p.alpha, p.alpha_star, p.beta1,
                        p.beta_minus1, p.k, p.best_aux])


def write_plot_data(path: str, xs, ys, config_hash: str) -> None:
    """One series per file: two space-separated columns."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# config_hash={config_hash}\n")
        for x, y in zip(xs, ys, strict=True):
            fh.write(f"{x} {y}\n")


# --- scaling fits -----------------------------------------------------------

UNIT_GENERATIONS = "generations"
UNIT_EVALUATIONS = "evaluations"


@dataclass(frozen=True, slots=True)
class FitResult:
    """Least-squares coefficients for T = a*mu*n*ln(n) + b*mu*n."""

    unit: str
    a: float
    b: float
    r_squared: float
    cell_count: int = field(default=0, compare=False)

    def predict(self, n: int, mu: int) -> float:
        return self.a * mu * n * math.log(n) + self.b * mu * n


def _fit_cells(cells: list[tuple[int, int, float]], unit: str) -> FitResult:
    ns = {n for n, _, _ in cells}
    if len(ns) < 3:
        raise ValueError(f"need >= 3 distinct n values, got {sorted(ns)}")
    design = np.array([[mu * n * math.log(n), mu * n] for n, mu, _ in cells])
    y = np.array([t for _, _, t in cells])
    coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    ss_res = float(resid @ resid)
    centered = y - y.mean()
    ss_tot = float(centered @ centered)
    r2 = 1.0 if ss_tot == 0.0 and ss_res <= 1e-18 else 1.0 - ss_res / ss_tot
    return FitResult(unit, float(coef[0]), float(coef[1]), r2, len(cells))


def fit_scaling(records: list[RunRecord], unit: str = UNIT_GENERATIONS) -> FitResult:
    """Fit cell-mean runtimes. The evaluations unit measures evaluations
    beyond initialization (the flat mu charge is removed first), which keeps
    the two units related by exactly the per-generation accounting factor."""
    if unit not in (UNIT_GENERATIONS, UNIT_EVALUATIONS):
        raise ValueError(f"unknown unit {unit!r}")
    groups: dict[tuple[int, int, int], list[float]] = {}
    for rec in records:
        val = rec.generations if unit == UNIT_GENERATIONS else rec.evaluations - rec.mu
        groups.setdefault((rec.spec.n, rec.mu, rec.lam), []).append(float(val))
    cells = [
        (n, mu, statistics.fmean(vals)) for (n, mu, _), vals in groups.items()
    ]
    return _fit_cells(cells, unit)


def fit_from_summary(path: str, unit: str = UNIT_GENERATIONS) -> FitResult:
    """Fit straight from a summary CSV produced by this module."""
    if unit not in (UNIT_GENERATIONS, UNIT_EVALUATIONS):
        raise ValueError(f"unknown unit {unit!r}")
    cells = []
    with open(path, newline="", encoding="utf-8") as fh:
        rows = csv.DictReader(r for r in fh if not r.startswith("#"))
        for row in rows:
            n, mu = int(row["n"]), int(row["mu"])
            if unit == UNIT_GENERATIONS:
                t = float(row["mean_generations"])
            else:
                t = float(row["mean_evaluations"]) - mu
            cells.append((n, mu, t))
    return _fit_cells(cells, unit)
