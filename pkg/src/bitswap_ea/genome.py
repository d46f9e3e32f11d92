"""Bitstring genomes, individuals, populations and the deterministic RNG contract.

Genomes are stored as packed machine words (a Python int) with position 0 at
the leftmost end, so ``str(genome)`` reads in index order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

RandomSource = np.random.Generator

_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


def make_rng(seed: int) -> RandomSource:
    """Deterministic generator: identical seed, identical draw sequence."""
    return np.random.default_rng(seed)


def mix_seed(*parts: int) -> int:
    """Collapse integer parts into one 64-bit seed (splitmix64 finalizer).

    Used to derive per-replication seeds from a base seed plus cell
    coordinates, so every stream is independent of grid layout.
    """
    state = 0
    for part in parts:
        state = (state + _SPLITMIX_GAMMA + (int(part) & _MASK64)) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        state = z ^ (z >> 31)
    return state


@dataclass(frozen=True, slots=True)
class Genome:
    """Fixed-length bitstring. ``word`` packs the bits, leftmost bit first."""

    n: int
    word: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"genome length must be >= 1, got {self.n}")
        if not 0 <= self.word < (1 << self.n):
            raise ValueError("packed word out of range for genome length")

    @classmethod
    def from_bits(cls, bits: Sequence[int] | Iterable[int]) -> "Genome":
        word = 0
        n = 0
        for b in bits:
            word = (word << 1) | (int(b) & 1)
            n += 1
        return cls(n, word)

    @classmethod
    def from_string(cls, text: str) -> "Genome":
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"genome text must be nonempty 0/1 string, got {text!r}")
        return cls(len(text), int(text, 2))

    def bit(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"bit index {i} out of range for n={self.n}")
        return (self.word >> (self.n - 1 - i)) & 1

    def with_bit(self, i: int, value: int) -> "Genome":
        if not 0 <= i < self.n:
            raise IndexError(f"bit index {i} out of range for n={self.n}")
        mask = 1 << (self.n - 1 - i)
        word = (self.word | mask) if value & 1 else (self.word & ~mask)
        return Genome(self.n, word)

    @property
    def ones(self) -> int:
        return self.word.bit_count()

    def complement(self) -> "Genome":
        return Genome(self.n, self.word ^ ((1 << self.n) - 1))

    def bits(self) -> list[int]:
        return [(self.word >> (self.n - 1 - i)) & 1 for i in range(self.n)]

    def __str__(self) -> str:
        return format(self.word, f"0{self.n}b")


def ones_count(genome: Genome) -> int:
    """Number of 1-bits (popcount on the packed word)."""
    return genome.word.bit_count()


def random_genome(n: int, rng: RandomSource) -> Genome:
    """Uniform random genome: each bit drawn independently fair."""
    if n < 1:
        raise ValueError(f"genome length must be >= 1, got {n}")
    bits = np.asarray(rng.integers(0, 2, size=n), dtype=np.uint8)
    packed = np.packbits(bits)
    pad = (8 - n % 8) % 8
    return Genome(n, int.from_bytes(packed.tobytes(), "big") >> pad)


@dataclass(frozen=True, slots=True)
class Individual:
    """Genome plus its cached fitness and auxiliary value."""

    genome: Genome
    fitness: int
    aux: int


@dataclass(frozen=True, slots=True)
class Population:
    members: tuple[Individual, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("population must be nonempty")

    @property
    def mu(self) -> int:
        return len(self.members)

    def best_fitness(self) -> int:
        return max(ind.fitness for ind in self.members)
