"""Period-b runs and burst-deletion outcomes.

A sequence of length b + l - 1 is a b-run of extent l when positions equal
mod b hold equal bits (b = 1 gives the ordinary constant run).  Deleting any
b consecutive bits of such a sequence yields the same outcome regardless of
the burst position: the l burst placements are indistinguishable from the
outcome alone.  For an iid fair source the extent of the first b-run is
geometric(1/2) — each one-bit extension must match the bit b places back —
which is what makes the per-burst location ambiguity parameter-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .deletion_model import Bits


@dataclass(frozen=True)
class BurstSpec:
    """A burst of b consecutive deletions starting at 1-based `position`."""

    b: int
    position: int

    def __post_init__(self) -> None:
        if self.b < 1 or self.position < 1:
            raise ValueError("burst length and position must be >= 1")

    def pattern(self, length: int) -> Bits:
        """Deletion pattern of the given length realizing this burst."""
        if self.position + self.b - 1 > length:
            raise ValueError(
                f"burst of {self.b} at position {self.position} does not fit in {length}"
            )
        before = self.position - 1
        return (0,) * before + (1,) * self.b + (0,) * (length - before - self.b)


def _check_length(x: Sequence[int], b: int) -> None:
    if b < 1:
        raise ValueError("period b must be >= 1")
    if len(x) < b:
        raise ValueError(f"sequence of length {len(x)} is shorter than period {b}")


def is_brun(x: Sequence[int], b: int) -> bool:
    """True iff x is periodic with period b (then its extent is len(x)-b+1)."""
    _check_length(x, b)
    return all(x[i] == x[i - b] for i in range(b, len(x)))


class FirstRun(NamedTuple):
    extent: int
    censored: bool  # the run reached the end of the sequence


def first_brun(x: Sequence[int], b: int) -> FirstRun:
    """Extent of the longest period-b prefix, flagged when it hits the end."""
    _check_length(x, b)
    for i in range(b, len(x)):
        if x[i] != x[i - b]:
            return FirstRun(extent=i - b + 1, censored=False)
    return FirstRun(extent=len(x) - b + 1, censored=True)


def first_brun_extent(x: Sequence[int], b: int) -> int:
    return first_brun(x, b).extent


def burst_delete_outcomes(x: Sequence[int], b: int) -> list[Bits]:
    """Outcome of deleting b consecutive bits at each start position 1..len-b+1."""
    _check_length(x, b)
    x = tuple(int(v) for v in x)
    return [x[:start] + x[start + b :] for start in range(len(x) - b + 1)]


def sample_first_extents(
    b: int, samples: int, rng: np.random.Generator, length: int = 64
) -> np.ndarray:
    """First-b-run extents of iid fair sequences; censored draws are -1.

    `length` bounds the observable extent at length - b + 1; longer runs are
    reported censored so geometric-law checks can exclude them.
    """
    if length < b + 1:
        raise ValueError("length must exceed the period to observe any mismatch")
    bits = rng.integers(0, 2, size=(samples, length), dtype=np.int8)
    matches = bits[:, b:] == bits[:, :-b]
    mismatch = ~matches
    has_end = mismatch.any(axis=1)
    first_bad = mismatch.argmax(axis=1)  # index into matches, i.e. i - b
    extents = np.where(has_end, first_bad + 1, -1)
    return extents.astype(np.int64)


def extent_pmf(extents: np.ndarray, max_extent: int) -> dict[int, float]:
    """Empirical pmf over extents 1..max_extent, censored samples excluded."""
    valid = extents[extents > 0]
    if valid.size == 0:
        raise ValueError("no uncensored samples")
    return {
        l: float(np.mean(valid == l)) for l in range(1, max_extent + 1)
    }
