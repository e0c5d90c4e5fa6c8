"""Compiled sampling kernels for the Monte Carlo estimators.

The lattice recursion here mirrors ``alignment_lattice._forward`` (the pure
reference implementation the tests validate against enumeration); it is
duplicated in nopython form so block lengths in the hundreds stay cheap.

Reproducibility contract: sample i draws from a splitmix64 stream seeded by
mixing (master_seed, i), so per-sample values are independent of scheduling
and the per-sample output arrays are identical for any thread count.  Final
reductions happen outside, in a fixed order.
"""

from __future__ import annotations

import math

import numba
import numpy as np
from numba import njit, prange

# TBB in this environment is too old for numba; pick the portable layer.
numba.config.THREADING_LAYER = "workqueue"

U64 = np.uint64
_MASK = U64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = U64(0x9E3779B97F4A7C15)
_MIX1 = U64(0xBF58476D1CE4E5B9)
_MIX2 = U64(0x94D049BB133111EB)
_STREAM = U64(0xA3EC647659359ACD)


def set_workers(count: int) -> None:
    """Cap the number of compiled-kernel threads (results do not depend on it)."""
    if count < 1:
        raise ValueError("worker count must be positive")
    numba.set_num_threads(min(count, numba.config.NUMBA_NUM_THREADS))


@njit(cache=True, inline="always")
def _stream_seed(master, index):
    z = (U64(master) ^ ((U64(index) + U64(1)) * _STREAM)) & _MASK
    z = (z + _GOLDEN) & _MASK
    z = ((z ^ (z >> U64(30))) * _MIX1) & _MASK
    z = ((z ^ (z >> U64(27))) * _MIX2) & _MASK
    return z ^ (z >> U64(31))


@njit(cache=True, inline="always")
def _next_unit(state):
    state = (state + _GOLDEN) & _MASK
    z = state
    z = ((z ^ (z >> U64(30))) * _MIX1) & _MASK
    z = ((z ^ (z >> U64(27))) * _MIX2) & _MASK
    z = z ^ (z >> U64(31))
    return state, (z >> U64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True)
def _forward_band(x, y, k00, k01, k10, k11, d0, d1fix):
    """Banded scaled forward pass; see alignment_lattice for the recursion.

    Returns (w_end0, w_end1, log2_scale) with the closing boundary factor
    left to the caller; all-zero weights mean no consistent pattern.
    """
    n = x.shape[0]
    m = y.shape[0]
    deletions = n - m
    w0 = np.zeros(m + 1)
    w1 = np.zeros(m + 1)
    if d1fix != 1 and m >= 1 and x[0] == y[0]:
        w0[1] = k00 if d0 == 0 else k10
    if d1fix != 0 and deletions >= 1:
        w1[0] = k01 if d0 == 0 else k11
    scale = 0.0
    for i in range(1, n):
        plo = i - deletions
        if plo < 0:
            plo = 0
        phi = i if i < m else m
        n0 = np.zeros(m + 1)
        n1 = np.zeros(m + 1)
        xi = x[i]
        for j in range(plo, phi + 1):
            a = w0[j]
            b = w1[j]
            if a == 0.0 and b == 0.0:
                continue
            if j < m and xi == y[j]:
                n0[j + 1] += a * k00 + b * k10
            if i + 1 - j <= deletions:
                n1[j] += a * k01 + b * k11
        lo = i + 1 - deletions
        if lo < 0:
            lo = 0
        hi = i + 1 if i + 1 < m else m
        top = 0.0
        for j in range(lo, hi + 1):
            if n0[j] > top:
                top = n0[j]
            if n1[j] > top:
                top = n1[j]
        if top == 0.0:
            return 0.0, 0.0, 0.0
        inv = 1.0 / top
        for j in range(lo, hi + 1):
            n0[j] *= inv
            n1[j] *= inv
        scale += math.log2(top)
        w0 = n0
        w1 = n1
    return w0[m], w1[m], scale


@njit(cache=True, inline="always")
def _draw_block_and_pattern(state, x, pat, d, alpha, beta):
    n = x.shape[0]
    for i in range(n):
        state, u = _next_unit(state)
        x[i] = 1 if u < 0.5 else 0
    state, u = _next_unit(state)
    pat[0] = 1 if u < d else 0
    for i in range(1, n + 2):
        state, u = _next_unit(state)
        if pat[i - 1] == 0:
            pat[i] = 1 if u < beta else 0
        else:
            pat[i] = 0 if u < alpha else 1
    return state


@njit(cache=True, parallel=True)
def residual_uncertainty_samples(n, alpha, beta, master_seed, count, out):
    """out[i] = h2(posterior of D_1) for draw i of (block, pattern)."""
    d = beta / (alpha + beta)
    k00 = 1.0 - beta
    k01 = beta
    k10 = alpha
    k11 = 1.0 - alpha
    for idx in prange(count):
        st = _stream_seed(master_seed, idx)
        x = np.empty(n, dtype=np.int8)
        pat = np.empty(n + 2, dtype=np.int8)
        _draw_block_and_pattern(st, x, pat, d, alpha, beta)
        m = 0
        for i in range(n):
            if pat[i + 1] == 0:
                m += 1
        y = np.empty(m, dtype=np.int8)
        jj = 0
        for i in range(n):
            if pat[i + 1] == 0:
                y[jj] = x[i]
                jj += 1
        b1 = pat[n + 1]
        kb0 = k00 if b1 == 0 else k01
        kb1 = k10 if b1 == 0 else k11
        a0, a1, sa = _forward_band(x, y, k00, k01, k10, k11, pat[0], -1)
        total = a0 * kb0 + a1 * kb1
        r0, r1, sr = _forward_band(x, y, k00, k01, k10, k11, pat[0], 1)
        restricted = r0 * kb0 + r1 * kb1
        q = 0.0
        if total > 0.0 and restricted > 0.0:
            q = (restricted / total) * 2.0 ** (sr - sa)
        if q <= 0.0 or q >= 1.0:
            out[idx] = 0.0
        else:
            out[idx] = -q * math.log2(q) - (1.0 - q) * math.log2(1.0 - q)


@njit(cache=True, parallel=True)
def emission_nll_samples(n, alpha, beta, master_seed, count, log2_reach, out):
    """out[i] = -(1/n) log2 p(y | x, boundary) for draw i.

    log2_reach[a, c] must hold log2 of the (n+1)-step kernel power, the
    normalizer of the boundary conditioning.
    """
    d = beta / (alpha + beta)
    k00 = 1.0 - beta
    k01 = beta
    k10 = alpha
    k11 = 1.0 - alpha
    for idx in prange(count):
        st = _stream_seed(master_seed, idx)
        x = np.empty(n, dtype=np.int8)
        pat = np.empty(n + 2, dtype=np.int8)
        _draw_block_and_pattern(st, x, pat, d, alpha, beta)
        m = 0
        for i in range(n):
            if pat[i + 1] == 0:
                m += 1
        y = np.empty(m, dtype=np.int8)
        jj = 0
        for i in range(n):
            if pat[i + 1] == 0:
                y[jj] = x[i]
                jj += 1
        b1 = pat[n + 1]
        kb0 = k00 if b1 == 0 else k01
        kb1 = k10 if b1 == 0 else k11
        a0, a1, sa = _forward_band(x, y, k00, k01, k10, k11, pat[0], -1)
        total = a0 * kb0 + a1 * kb1
        log2p = math.log2(total) + sa - log2_reach[pat[0], b1]
        out[idx] = -log2p / n
