"""Exact small-block entropies of the deletion side-information problem.

For block length n the module enumerates every source block x (using the
global bit-complement symmetry to halve the work) and, for each x, runs a
y-keyed dynamic program over the 2^n deletion patterns: the program's state
maps each distinct emitted subsequence to its accumulated pattern weight, so
the pattern space collapses to the subsequence support.  Each weight is kept
split by the last indicator value and by whether the first indicator was 1,
which yields in one sweep

    R_n = (1/n) H(X | Y, B)      per-bit uncertainty of the source,
    J_n = d + (1/n) H(Y | X, B)  deleted fraction plus emission entropy,
    E_n = H(D_1 | X, Y, B)       residual uncertainty of the first indicator,

where B is the boundary pair (indicator before the block, indicator after
it) and all entropies are in bits.  The three sequences satisfy, for every
n >= 2, the exact identity

    H(D_1 | D_0, D_{n+1}) - E_n = n (J_n - J_{n-1}) + J_{n-1} - d,

whose numerical residual is the strongest whole-pipeline check exposed here.
Sums are compensated (Neumaier) so the residual stays near machine epsilon.

Everything scales as ~4^n; calls are refused above a configurable cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .deletion_model import (
    DeletionParams,
    kernel_power,
    stationary_distribution,
    transition_matrix,
)
from .errors import CapExceededError

DEFAULT_ENUMERATION_CAP = 12


def binary_entropy(p: float) -> float:
    """h2(p) in bits, with the 0 log 0 := 0 convention."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


class _Kahan:
    """Neumaier compensated accumulator."""

    __slots__ = ("_sum", "_c")

    def __init__(self) -> None:
        self._sum = 0.0
        self._c = 0.0

    def add(self, value: float) -> None:
        t = self._sum + value
        if abs(self._sum) >= abs(value):
            self._c += (self._sum - t) + value
        else:
            self._c += (value - t) + self._sum
        self._sum = t

    @property
    def value(self) -> float:
        return self._sum + self._c


def _check_cap(n: int, cap: int) -> None:
    if n < 1:
        raise ValueError("block length must be at least 1")
    if n > cap:
        raise CapExceededError(
            f"block length {n} exceeds the enumeration cap {cap}; "
            f"the sweep costs ~4^n and is refused"
        )


def _complement_key(key: int) -> int:
    m = key.bit_length() - 1
    return key ^ ((1 << m) - 1)


@lru_cache(maxsize=None)
def _exact_quantities(params: DeletionParams, n: int) -> tuple[float, float, float]:
    """(R_n, J_n, E_n) by exhaustive enumeration; cached per (params, n)."""
    k = transition_matrix(params).tolist()
    k00, k01 = k[0]
    k10, k11 = k[1]
    pi = stationary_distribution(params)
    reach = kernel_power(params, n + 1)
    log2_reach = [[math.log2(reach[a][c]) for c in (0, 1)] for a in (0, 1)]
    px = 2.0 ** -(n - 1)  # each enumerated x also stands for its complement

    joint_entropy = _Kahan()  # H(X, Y, B)
    emission_entropy = _Kahan()  # H(Y | X, B)
    residual = _Kahan()  # E_n
    support: dict[tuple[int, int, int], float] = {}  # (y key, b0, b1) -> p(y, b)

    for xc in range(2 ** (n - 1)):  # x with leading bit 0; complement folded in
        x = [(xc >> (n - 1 - i)) & 1 for i in range(n)]
        for d0 in (0, 1):
            init0, init1 = (k00, k01) if d0 == 0 else (k10, k11)
            # state: packed y (leading sentinel bit) -> [w0, w1, v0, v1]
            # w = total weight by last indicator, v = weight with D_1 = 1
            states: dict[int, list[float]] = {2 | x[0]: [init0, 0.0, 0.0, 0.0]}
            if n >= 1:
                states[1] = [0.0, init1, 0.0, init1]
            for i in range(1, n):
                xi = x[i]
                nxt: dict[int, list[float]] = {}
                for key, (w0, w1, v0, v1) in states.items():
                    dw = w0 * k01 + w1 * k11
                    dv = v0 * k01 + v1 * k11
                    cell = nxt.get(key)
                    if cell is None:
                        nxt[key] = [0.0, dw, 0.0, dv]
                    else:
                        cell[1] += dw
                        cell[3] += dv
                    kk = (key << 1) | xi
                    kw = w0 * k00 + w1 * k10
                    kv = v0 * k00 + v1 * k10
                    cell = nxt.get(kk)
                    if cell is None:
                        nxt[kk] = [kw, 0.0, kv, 0.0]
                    else:
                        cell[0] += kw
                        cell[2] += kv
                states = nxt
            pid0 = pi[d0]
            for key, (w0, w1, v0, v1) in states.items():
                for b1 in (0, 1):
                    kb0, kb1 = (k00, k10) if b1 == 0 else (k01, k11)
                    w = w0 * kb0 + w1 * kb1
                    v = v0 * kb0 + v1 * kb1
                    p = px * pid0 * w
                    joint_entropy.add(-p * math.log2(p * 0.5))
                    # p log p of both x and its complement: each carries px/2
                    emission_entropy.add(p * (log2_reach[d0][b1] - math.log2(w)))
                    residual.add(p * binary_entropy(v / w))
                    skey = (key, d0, b1)
                    support[skey] = support.get(skey, 0.0) + p
    # H(Y, B).  The half-enumeration stores, under the key of the emitted y,
    # the combined mass of (x, y) and (~x, ~y); the true marginal of y is
    # q = (mass under y + mass under ~y) / 2, and complement pairs carry
    # equal marginals, so charging each stored key -p log2 q sums the pair's
    # -2 q log2 q exactly (the empty string, its own complement, also works).
    side_info_entropy = _Kahan()
    for (key, d0, b1), p in support.items():
        comp = (_complement_key(key), d0, b1)
        q = 0.5 * (p + support.get(comp, 0.0))
        side_info_entropy.add(-p * math.log2(q))
    d = params.stationary_fraction
    rate = (joint_entropy.value - side_info_entropy.value) / n
    emission_rate_val = d + emission_entropy.value / n
    return rate, emission_rate_val, residual.value


def conditional_entropy_rate(
    params: DeletionParams, n: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> float:
    """R_n = (1/n) H(X | Y, B), exact."""
    _check_cap(n, cap)
    return _exact_quantities(params, n)[0]


def emission_rate(
    params: DeletionParams, n: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> float:
    """J_n = d + (1/n) H(Y | X, B), exact."""
    _check_cap(n, cap)
    return _exact_quantities(params, n)[1]


def residual_uncertainty(
    params: DeletionParams, n: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> float:
    """E_n = H(D_1 | X, Y, B), exact."""
    _check_cap(n, cap)
    return _exact_quantities(params, n)[2]


def pattern_entropy_rate(params: DeletionParams) -> float:
    """Entropy rate H(D_1 | D_0) = d h2(alpha) + (1 - d) h2(beta) of the chain."""
    d = params.stationary_fraction
    return d * binary_entropy(params.alpha) + (1.0 - d) * binary_entropy(params.beta)


def pattern_entropy_pinned(params: DeletionParams, n: int) -> float:
    """H(D_1 | D_0, D_{n+1}): first-indicator entropy with the far end pinned."""
    if n < 1:
        raise ValueError("block length must be at least 1")
    k = transition_matrix(params)
    kn = kernel_power(params, n)
    kn1 = kernel_power(params, n + 1)
    pi = stationary_distribution(params)
    total = 0.0
    for a in (0, 1):
        for c in (0, 1):
            pac = pi[a] * kn1[a][c]
            q = k[a][1] * kn[1][c] / kn1[a][c]
            total += pac * binary_entropy(q)
    return total


def identity_residual(
    params: DeletionParams, n: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> float:
    """|[H(D_1|D_0,D_{n+1}) - E_n] - [n (J_n - J_{n-1}) + J_{n-1} - d]|, n >= 2.

    An exact identity; residuals above rounding noise indicate a bug.
    """
    if n < 2:
        raise ValueError("the identity needs two consecutive block lengths (n >= 2)")
    _check_cap(n, cap)
    jn = emission_rate(params, n, cap)
    jn1 = emission_rate(params, n - 1, cap)
    en = residual_uncertainty(params, n, cap)
    d = params.stationary_fraction
    lhs = pattern_entropy_pinned(params, n) - en
    rhs = n * (jn - jn1) + jn1 - d
    return abs(lhs - rhs)


def superadditivity_margin(
    params: DeletionParams, n_max: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> float:
    """min over m < n <= n_max of n R_n - m R_m - (n-m) R_{n-m} (>= 0 expected)."""
    if n_max < 2:
        raise ValueError("need n_max >= 2 to compare block lengths")
    _check_cap(n_max, cap)
    rates = {m: conditional_entropy_rate(params, m, cap) for m in range(1, n_max + 1)}
    worst = math.inf
    for n in range(2, n_max + 1):
        for m in range(1, n):
            margin = n * rates[n] - m * rates[m] - (n - m) * rates[n - m]
            worst = min(worst, margin)
    return worst


def expected_side_info_length(params: DeletionParams, n: int) -> float:
    """E[length of y] = n (1 - d), by linearity over kept positions."""
    if n < 1:
        raise ValueError("block length must be at least 1")
    return n * (1.0 - params.stationary_fraction)


@dataclass(frozen=True)
class EntropyReport:
    """Exact per-block-length record of every small-n quantity."""

    n: int
    params: DeletionParams
    conditional_entropy_rate: float  # R_n
    emission_rate: float  # J_n
    residual_uncertainty: float  # E_n
    pattern_entropy_rate: float  # H(D_1 | D_0)
    pattern_entropy_pinned: float  # H(D_1 | D_0, D_{n+1})
    identity_residual: float | None  # None at n = 1

    @property
    def decomposition_gap(self) -> float:
        """|R_n - (d + H(D_1|D_0) - E_n)|; both sides converge to the same limit."""
        d = self.params.stationary_fraction
        return abs(
            self.conditional_entropy_rate
            - (d + self.pattern_entropy_rate - self.residual_uncertainty)
        )


def entropy_report(
    params: DeletionParams, n: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> EntropyReport:
    _check_cap(n, cap)
    rate, emission, resid = _exact_quantities(params, n)
    return EntropyReport(
        n=n,
        params=params,
        conditional_entropy_rate=rate,
        emission_rate=emission,
        residual_uncertainty=resid,
        pattern_entropy_rate=pattern_entropy_rate(params),
        pattern_entropy_pinned=pattern_entropy_pinned(params, n),
        identity_residual=identity_residual(params, n, cap) if n >= 2 else None,
    )
