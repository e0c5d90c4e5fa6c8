"""Independent brute-force oracles used by the test suite.

Everything here enumerates deletion patterns (or whole joint laws) directly
and never touches the lattice recursion or the y-keyed enumeration used by
the package, so agreement is a genuine cross-check rather than a tautology.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict

from burstsync.deletion_model import Boundary, DeletionParams


def _path_weight(params: DeletionParams, d0: int, pattern, b1: int) -> float:
    """P(D_1..D_n = pattern, D_{n+1} = b1 | D_0 = d0) by explicit products."""
    a, b = params.alpha, params.beta
    k = ((1.0 - b, b), (a, 1.0 - a))
    w = 1.0
    prev = d0
    for cur in pattern:
        w *= k[prev][cur]
        prev = cur
    return w * k[prev][b1]


def brute_emission(x, y, params, boundary: Boundary, d1=None) -> float:
    """p(y | x, boundary) (optionally restricted to D_1 = d1), linear domain."""
    n = len(x)
    consistent = 0.0
    norm = 0.0
    for pattern in itertools.product((0, 1), repeat=n):
        w = _path_weight(params, boundary.d0, pattern, boundary.d_next)
        norm += w
        if d1 is not None and pattern[0] != d1:
            continue
        kept = tuple(bit for bit, drop in zip(x, pattern) if not drop)
        if kept == tuple(y):
            consistent += w
    return consistent / norm


def brute_d1_posterior(x, y, params, boundary: Boundary) -> float:
    total = brute_emission(x, y, params, boundary)
    restricted = brute_emission(x, y, params, boundary, d1=1)
    return restricted / total


def brute_pattern_count(x, y) -> int:
    n = len(x)
    target = tuple(y)
    count = 0
    for pattern in itertools.product((0, 1), repeat=n):
        kept = tuple(bit for bit, drop in zip(x, pattern) if not drop)
        if kept == target:
            count += 1
    return count


def joint_table(params: DeletionParams, n: int) -> dict:
    """Full joint law p(x, y, b0, b1) tabulated by direct enumeration.

    Iterates every source block and every full indicator pattern
    (D_0, ..., D_{n+1}); feasible for n <= 8 or so.
    """
    d = params.stationary_fraction
    pi = (1.0 - d, d)
    table: dict = defaultdict(float)
    px = 0.5**n
    for x in itertools.product((0, 1), repeat=n):
        for full in itertools.product((0, 1), repeat=n + 2):
            b0, b1 = full[0], full[-1]
            pattern = full[1:-1]
            w = pi[b0] * _path_weight(params, b0, pattern, b1)
            y = tuple(bit for bit, drop in zip(x, pattern) if not drop)
            table[(x, y, b0, b1)] += px * w
    return dict(table)


def entropy_of(probs) -> float:
    """Shannon entropy in bits of an iterable of probabilities."""
    return -math.fsum(p * math.log2(p) for p in probs if p > 0.0)


def marginalize(table: dict, keep) -> dict:
    out: dict = defaultdict(float)
    for key, p in table.items():
        out[tuple(key[i] for i in keep)] += p
    return dict(out)
