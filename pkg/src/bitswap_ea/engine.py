"""Elitist (mu+lambda) engine built on one-bit-swap recombination.

Each generation runs ``lambda`` binary tournaments (drawn with replacement,
fair coin on fitness ties), pairs consecutive winners into ``lambda/2``
recombination pairs, exchanges one uniformly chosen bit value between the two
parents of each pair, and replaces the population elitist-first.

Evaluation accounting is fixed at ``mu`` initial evaluations plus ``2*lambda``
per generation (two competitors per pool slot).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .fitness import FitnessSpec, evaluate, is_optimum, make_individual
from .genome import (
    Genome,
    Individual,
    Population,
    RandomSource,
    make_rng,
    random_genome,
)

INIT_UNIFORM = "uniform_random"
INIT_BALANCED = "balanced_bins"

TERMINATED_OPTIMUM = "optimum"
TERMINATED_CAP = "generation_cap"


def default_generation_cap(mu: int, n: int) -> int:
    return math.ceil(50.0 * mu * n * math.log(n + 1))


@dataclass(frozen=True, slots=True)
class EngineConfig:
    spec: FitnessSpec
    mu: int
    lam: int
    generation_cap: int | None = None
    init_mode: str = INIT_UNIFORM

    def __post_init__(self) -> None:
        if self.mu < 2:
            raise ValueError(f"mu must be >= 2, got {self.mu}")
        if self.lam < 2 or self.lam % 2 != 0:
            raise ValueError(f"lambda must be even and >= 2, got {self.lam}")
        if self.init_mode not in (INIT_UNIFORM, INIT_BALANCED):
            raise ValueError(f"unknown init mode {self.init_mode!r}")
        if self.init_mode == INIT_BALANCED and self.spec.kind != "plateau_royal_road":
            raise ValueError("balanced_bins init requires the plateau fitness")
        if self.generation_cap is not None and self.generation_cap < 0:
            raise ValueError("generation cap must be >= 0")

    @property
    def cap(self) -> int:
        if self.generation_cap is not None:
            return self.generation_cap
        return default_generation_cap(self.mu, self.spec.n)


@dataclass(frozen=True, slots=True)
class ElitismPartition:
    """Population split by fitness level.

    ``alpha`` counts members at the best fitness ``k``, ``beta1`` those at the
    best strictly lower fitness actually present, ``beta_minus1`` the rest.
    ``alpha_star`` counts best-fitness members that also have the maximal
    auxiliary value (``best_aux``).
    """

    alpha: int
    beta1: int
    beta_minus1: int
    alpha_star: int
    k: int
    best_aux: int

    @property
    def total(self) -> int:
        return self.alpha + self.beta1 + self.beta_minus1


@dataclass(slots=True)
class RunRecord:
    seed: int
    spec: FitnessSpec
    mu: int
    lam: int
    generations: int
    evaluations: int
    terminated: str
    trace: list[ElitismPartition] = field(default_factory=list)


def classify_partition(pop: Population) -> ElitismPartition:
    k = max(ind.fitness for ind in pop.members)
    alpha = sum(1 for ind in pop.members if ind.fitness == k)
    lower = [ind.fitness for ind in pop.members if ind.fitness < k]
    if lower:
        next_level = max(lower)
        beta1 = sum(1 for f in lower if f == next_level)
    else:
        beta1 = 0
    best_aux = max(ind.aux for ind in pop.members if ind.fitness == k)
    alpha_star = sum(
        1 for ind in pop.members if ind.fitness == k and ind.aux == best_aux
    )
    return ElitismPartition(
        alpha=alpha,
        beta1=beta1,
        beta_minus1=pop.mu - alpha - beta1,
        alpha_star=alpha_star,
        k=k,
        best_aux=best_aux,
    )


def tournament_select(pop: Population, rng: RandomSource) -> Individual:
    """Two uniform draws with replacement; higher fitness wins, coin on ties."""
    i, j = rng.integers(0, pop.mu, size=2)
    a = pop.members[int(i)]
    b = pop.members[int(j)]
    if a.fitness > b.fitness:
        return a
    if b.fitness > a.fitness:
        return b
    return a if int(rng.integers(0, 2)) == 0 else b


def fill_pool(
    pop: Population, lam: int, rng: RandomSource
) -> list[tuple[Individual, Individual]]:
    """Run lambda tournaments and pair consecutive winners."""
    winners = [tournament_select(pop, rng) for _ in range(lam)]
    return [(winners[t], winners[t + 1]) for t in range(0, lam, 2)]


def one_bit_swap(
    pair: tuple[Individual, Individual], spec: FitnessSpec, rng: RandomSource
) -> tuple[Individual, Individual]:
    """Exchange the bit values at one uniform position of each parent."""
    p1, p2 = pair
    pos = rng.integers(0, spec.n, size=2)
    i, j = int(pos[0]), int(pos[1])
    v1 = p1.genome.bit(i)
    v2 = p2.genome.bit(j)
    g1 = p1.genome.with_bit(i, v2)
    g2 = p2.genome.with_bit(j, v1)
    return make_individual(spec, g1), make_individual(spec, g2)


def replace(
    pop: Population, offspring: list[Individual], rng: RandomSource
) -> Population:
    """Elitist replacement.

    All members at the current best fitness are retained. The remaining slots
    are filled first by offspring at or above that fitness (best first), then
    by the other offspring drawn uniformly without replacement. If retained
    plus qualifying offspring overflow ``mu``, a uniform ``mu``-subset of that
    combined elite survives. If the offspring run out before the population is
    full, uniformly chosen non-elite survivors stay.
    """
    best = max(ind.fitness for ind in pop.members)
    retained = [ind for ind in pop.members if ind.fitness == best]
    survivors = [ind for ind in pop.members if ind.fitness < best]
    new_elite = sorted(
        (o for o in offspring if o.fitness >= best), key=lambda o: -o.fitness
    )
    rest = [o for o in offspring if o.fitness < best]
    mu = pop.mu

    if len(retained) + len(new_elite) > mu:
        combined = retained + new_elite
        idx = rng.choice(len(combined), size=mu, replace=False)
        members = [combined[int(i)] for i in idx]
    else:
        members = retained + new_elite
        slots = mu - len(members)
        if slots > 0 and rest:
            take = min(slots, len(rest))
            idx = rng.choice(len(rest), size=take, replace=False)
            members += [rest[int(i)] for i in idx]
            slots -= take
        if slots > 0:
            idx = rng.choice(len(survivors), size=slots, replace=False)
            members += [survivors[int(i)] for i in idx]
    assert len(members) == mu
    return Population(tuple(members))


def one_generation(
    pop: Population, spec: FitnessSpec, lam: int, rng: RandomSource
) -> Population:
    """Pool, swap, replace: one full generation step."""
    offspring: list[Individual] = []
    for pair in fill_pool(pop, lam, rng):
        offspring.extend(one_bit_swap(pair, spec, rng))
    return replace(pop, offspring, rng)


def _balanced_bins_genome(spec: FitnessSpec, rng: RandomSource) -> Genome:
    # floor(gamma/2) ones per bin, uniformly placed inside the bin
    assert spec.gamma is not None
    gamma = spec.gamma
    word = 0
    for b in range(spec.bin_count):
        start = b * gamma
        if gamma // 2 > 0:
            for off in rng.choice(gamma, size=gamma // 2, replace=False):
                word |= 1 << (spec.n - 1 - (start + int(off)))
    return Genome(spec.n, word)


def init_population(config: EngineConfig, rng: RandomSource) -> Population:
    members = []
    for _ in range(config.mu):
        if config.init_mode == INIT_BALANCED:
            g = _balanced_bins_genome(config.spec, rng)
        else:
            g = random_genome(config.spec.n, rng)
        members.append(make_individual(config.spec, g))
    return Population(tuple(members))


def run(config: EngineConfig, seed: int, record_trace: bool = True) -> RunRecord:
    """Run to the optimum or the generation cap; trace includes the initial state."""
    rng = make_rng(seed)
    pop = init_population(config, rng)
    evaluations = config.mu
    generations = 0
    cap = config.cap
    trace = [classify_partition(pop)] if record_trace else []
    spec = config.spec

    while True:
        best = max(pop.members, key=lambda ind: ind.fitness)
        if is_optimum(spec, best.genome):
            terminated = TERMINATED_OPTIMUM
            break
        if generations >= cap:
            terminated = TERMINATED_CAP
            break
        pop = one_generation(pop, spec, config.lam, rng)
        generations += 1
        evaluations += 2 * config.lam
        if record_trace:
            trace.append(classify_partition(pop))

    return RunRecord(
        seed=seed,
        spec=spec,
        mu=config.mu,
        lam=config.lam,
        generations=generations,
        evaluations=evaluations,
        terminated=terminated,
        trace=trace,
    )


def run_rls_baseline(
    n: int,
    seed: int,
    generation_cap: int | None = None,
    record_trace: bool = True,
) -> RunRecord:
    """Single-individual baseline: flip one uniform bit, keep it unless fitness drops.

    One evaluation per step plus one for the initial individual, so
    ``evaluations = generations + 1`` here (the engine's ``2*lambda`` rule does
    not apply to a walk without a pool).
    """
    spec = FitnessSpec.onemax(n)
    rng = make_rng(seed)
    genome = random_genome(n, rng)
    fitness, aux = evaluate(spec, genome)
    cap = generation_cap if generation_cap is not None else default_generation_cap(1, n)
    steps = 0
    trace = []
    if record_trace:
        trace.append(ElitismPartition(1, 0, 0, 1, fitness, aux))

    while fitness < n and steps < cap:
        pos = int(rng.integers(0, n))
        flipped = genome.with_bit(pos, 1 - genome.bit(pos))
        new_fitness, new_aux = evaluate(spec, flipped)
        if new_fitness >= fitness:
            genome, fitness, aux = flipped, new_fitness, new_aux
        steps += 1
        if record_trace:
            trace.append(ElitismPartition(1, 0, 0, 1, fitness, aux))

    return RunRecord(
        seed=seed,
        spec=spec,
        mu=1,
        lam=0,
        generations=steps,
        evaluations=steps + 1,
        terminated=TERMINATED_OPTIMUM if fitness == n else TERMINATED_CAP,
        trace=trace,
    )
