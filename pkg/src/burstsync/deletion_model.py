"""Bursty deletion process: a two-state Markov chain and the deletion map.

The deletion indicator chain D_0, D_1, ... lives on {0, 1}; indicator 1
deletes the aligned source bit.  From state 0 the chain enters a deletion
burst with probability ``beta``; from state 1 it leaves the burst with
probability ``alpha``.  Burst lengths are therefore geometric with mean
1/alpha, and the chain started from its stationary law deletes a long-run
fraction d = beta / (alpha + beta) of the source.

A block of length n carries n + 2 indicators: one boundary indicator before
the block and one after it.  Both boundary values condition every entropy
quantity computed elsewhere, so patterns are stored with the boundary bits
included.

Bit strings (source blocks, observations, indicator patterns) are plain
tuples of 0/1 ints.  Probabilities are reported in log base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

Bits = tuple[int, ...]


def as_bits(values: Iterable[int]) -> Bits:
    """Validate and normalize a bit sequence to a tuple of 0/1 ints."""
    bits = tuple(int(v) for v in values)
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"bit sequence contains values outside {{0, 1}}: {bits!r}")
    return bits


def random_bits(rng: np.random.Generator, n: int) -> Bits:
    """n iid fair bits from the given generator."""
    return tuple(int(b) for b in rng.integers(0, 2, size=n))


def complement(bits: Sequence[int]) -> Bits:
    return tuple(1 - b for b in bits)


@dataclass(frozen=True)
class DeletionParams:
    """Markov deletion-process parameters, both restricted to (0, 1)."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 1.0 and 0.0 < self.beta < 1.0):
            raise ValueError(
                f"alpha and beta must lie strictly inside (0, 1); "
                f"got alpha={self.alpha}, beta={self.beta}"
            )

    @property
    def stationary_fraction(self) -> float:
        """Long-run deleted fraction d = beta / (alpha + beta)."""
        return self.beta / (self.alpha + self.beta)


@dataclass(frozen=True)
class Boundary:
    """Values of the indicator just before and just after a block."""

    d0: int = 0
    d_next: int = 0

    def __post_init__(self) -> None:
        if self.d0 not in (0, 1) or self.d_next not in (0, 1):
            raise ValueError(f"boundary bits must be 0 or 1: {self}")


def transition_matrix(params: DeletionParams) -> np.ndarray:
    """Row-stochastic kernel K[from, to] of the indicator chain."""
    a, b = params.alpha, params.beta
    return np.array([[1.0 - b, b], [a, 1.0 - a]])


def transition_prob(params: DeletionParams, frm: int, to: int) -> float:
    if frm not in (0, 1) or to not in (0, 1):
        raise ValueError("states must be 0 or 1")
    return float(transition_matrix(params)[frm, to])


def kernel_power(params: DeletionParams, steps: int) -> np.ndarray:
    """K**steps, the law of the indicator `steps` positions ahead."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    return np.linalg.matrix_power(transition_matrix(params), steps)


def stationary_distribution(params: DeletionParams) -> tuple[float, float]:
    d = params.stationary_fraction
    return (1.0 - d, d)


def sample_pattern(params: DeletionParams, n: int, rng: np.random.Generator) -> Bits:
    """Stationary-start indicator pattern (D_0, ..., D_{n+1}) for a length-n block."""
    if n < 1:
        raise ValueError("block length must be at least 1")
    d = params.stationary_fraction
    u = rng.random(n + 2)
    pat = [0] * (n + 2)
    pat[0] = 1 if u[0] < d else 0
    for i in range(1, n + 2):
        if pat[i - 1] == 0:
            pat[i] = 1 if u[i] < params.beta else 0
        else:
            pat[i] = 0 if u[i] < params.alpha else 1
    return tuple(pat)


def apply_deletion(x: Sequence[int], pattern: Sequence[int]) -> Bits:
    """Drop every x_i whose indicator is 1; `pattern` covers the block only."""
    if len(pattern) != len(x):
        raise ValueError(
            f"pattern length {len(pattern)} does not match block length {len(x)}"
        )
    return tuple(int(b) for b, drop in zip(x, pattern) if not drop)


def pattern_log2_prob(params: DeletionParams, full_pattern: Sequence[int]) -> float:
    """log2 probability of a stationary-start indicator path (any length >= 1)."""
    pat = as_bits(full_pattern)
    if not pat:
        raise ValueError("pattern must contain at least the initial indicator")
    k = transition_matrix(params)
    pi = stationary_distribution(params)
    total = math.log2(pi[pat[0]])
    for prev, cur in zip(pat, pat[1:]):
        total += math.log2(k[prev, cur])
    return total
