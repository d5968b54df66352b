"""
Concatenated deceptive trap functions.

A string of m * k bits is split into m consecutive blocks of k bits. A block with u ones scores k if u == k and
k - 1 - u otherwise, so hill climbing on a block is drawn towards all zeros while the optimum is all ones.
Costs are minimized: cost = m * k - total score, which is 0 exactly at the all-ones string.
"""
from dataclasses import dataclass

import numpy as np

from evolution.exceptions import ConfigurationError

TRAP_SIZES = (3, 4, 5)
BLOCK_COUNTS = (5, 10, 15, 20, 25, 30)


@dataclass(frozen=True)
class TrapSpec:
    k: int
    m: int

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise ConfigurationError(f"Trap size and block count must be positive, got k={self.k}, m={self.m}")

    @property
    def length(self):
        return self.m * self.k

    @property
    def label(self):
        return f'dtf:k={self.k},m={self.m}'

    def __str__(self):
        return self.label


def trap_block(bits, k):
    bits = np.asarray(bits)
    if bits.size != k:
        raise ValueError(f"A trap block has exactly {k} bits, got {bits.size}")
    ones = int(bits.sum())
    return k if ones == k else k - 1 - ones


def trap_value(spec, x):
    """Total trap score of `x` (to be maximized); m * k at the optimum."""
    x = np.asarray(x)
    if x.shape != (spec.length,):
        raise ValueError(f"{spec.label} expects {spec.length} bits, got shape {x.shape}")
    ones = x.reshape(spec.m, spec.k).sum(axis=1)
    return int(np.where(ones == spec.k, spec.k, spec.k - 1 - ones).sum())


def evaluate(spec, x):
    return spec.length - trap_value(spec, x)


@dataclass(frozen=True)
class TrapObjective:
    """Picklable cost function over decoded genes."""
    spec: TrapSpec

    def __call__(self, genes):
        return float(evaluate(self.spec, genes))


def population_size(spec):
    return 256 if spec.k == 5 else 128


def instance_grid():
    """The benchmark grid: every (k, m) combination with its population size."""
    return [(TrapSpec(k, m), population_size(TrapSpec(k, m))) for k in TRAP_SIZES for m in BLOCK_COUNTS]
