"""Forward lattice summing deletion-pattern weights consistent with an observation.

Given a source block x and an observation y, the lattice computes

    p(y, D_{n+1}=b1 | x, D_0=b0) = sum over patterns d with y(x, d) = y of
                                   P(D_1..D_n = d, D_{n+1}=b1 | D_0=b0),

and from it the boundary-conditioned emission probability and the posterior
of the first deletion indicator.  The recursion runs over source positions
with state (number of observation bits matched so far, last indicator):
a kept step must reproduce the next observation bit, a deleted step advances
the source only.  Because the indicator process is order-1 Markov, the last
indicator is all the state the weights need.

Reachable states form a band of width (deletions + 1) around the diagonal,
so the cost is O(n * (n - |y| + 1)).  Weights are rescaled to max 1 at each
step and the scale tracked in log2, hence underflow is impossible and a zero
total weight occurs exactly when y is not a subsequence of x.  Structural
impossibility is reported as None, never as a tiny float.
"""

from __future__ import annotations

import math
from typing import Sequence

from .deletion_model import Boundary, DeletionParams, kernel_power, transition_matrix


def _forward(x, y, k, d0, d1fix):
    """Banded scaled forward pass.

    Returns (w_end0, w_end1, log2_scale): weights of complete matchings
    ending with last indicator 0/1, covering transitions D_0 -> ... -> D_n
    (the closing factor K[D_n, b1] is left to the caller).  All-zero weights
    mean no consistent pattern exists.  d1fix of 0 or 1 restricts the first
    indicator; None leaves it free.
    """
    n, m = len(x), len(y)
    deletions = n - m
    w0 = [0.0] * (m + 1)
    w1 = [0.0] * (m + 1)
    if d1fix != 1 and m >= 1 and x[0] == y[0]:
        w0[1] = k[d0][0]
    if d1fix != 0 and deletions >= 1:
        w1[0] = k[d0][1]
    k00, k01 = k[0]
    k10, k11 = k[1]
    scale = 0.0
    for i in range(1, n):
        lo = max(0, i - deletions)
        hi = min(i, m)
        n0 = [0.0] * (m + 1)
        n1 = [0.0] * (m + 1)
        xi = x[i]
        for j in range(lo, hi + 1):
            a, b = w0[j], w1[j]
            if a == 0.0 and b == 0.0:
                continue
            if j < m and xi == y[j]:
                n0[j + 1] += a * k00 + b * k10
            if i + 1 - j <= deletions:
                n1[j] += a * k01 + b * k11
        top = 0.0
        for j in range(max(0, i + 1 - deletions), min(i + 1, m) + 1):
            if n0[j] > top:
                top = n0[j]
            if n1[j] > top:
                top = n1[j]
        if top == 0.0:
            return 0.0, 0.0, 0.0
        inv = 1.0 / top
        for j in range(max(0, i + 1 - deletions), min(i + 1, m) + 1):
            n0[j] *= inv
            n1[j] *= inv
        scale += math.log2(top)
        w0, w1 = n0, n1
    return w0[m], w1[m], scale


def emission_log2_prob(
    x: Sequence[int],
    y: Sequence[int],
    params: DeletionParams,
    boundary: Boundary = Boundary(0, 0),
    d1: int | None = None,
) -> float | None:
    """log2 p(y | x, boundary), or None when y is not a subsequence of x.

    With ``d1`` given, returns the joint restriction
    log2 p(y, D_1=d1 | x, boundary); summing the two restrictions in the
    linear domain recovers the unrestricted emission exactly.
    """
    if len(y) > len(x):
        raise ValueError(f"observation longer than source: {len(y)} > {len(x)}")
    if d1 is not None and d1 not in (0, 1):
        raise ValueError("d1 restriction must be 0, 1, or None")
    if not x:
        return 0.0  # empty block: y must be empty too (len check above)
    k = transition_matrix(params).tolist()
    e0, e1, scale = _forward(x, y, k, boundary.d0, -1 if d1 is None else d1)
    weight = e0 * k[0][boundary.d_next] + e1 * k[1][boundary.d_next]
    if weight == 0.0:
        return None
    reach = kernel_power(params, len(x) + 1)[boundary.d0, boundary.d_next]
    return math.log2(weight) + scale - math.log2(reach)


def d1_posterior(
    x: Sequence[int],
    y: Sequence[int],
    params: DeletionParams,
    boundary: Boundary = Boundary(0, 0),
) -> float:
    """P(D_1 = 1 | x, y, boundary); raises if (x, y) is inconsistent."""
    if len(y) > len(x):
        raise ValueError(f"observation longer than source: {len(y)} > {len(x)}")
    if not x:
        raise ValueError("posterior undefined for an empty block")
    k = transition_matrix(params).tolist()
    kb = (k[0][boundary.d_next], k[1][boundary.d_next])
    a0, a1, sa = _forward(x, y, k, boundary.d0, -1)
    total = a0 * kb[0] + a1 * kb[1]
    if total == 0.0:
        raise ValueError("zero emission: observation is not a subsequence of the source")
    r0, r1, sr = _forward(x, y, k, boundary.d0, 1)
    restricted = r0 * kb[0] + r1 * kb[1]
    if restricted == 0.0:
        return 0.0
    return (restricted / total) * 2.0 ** (sr - sa)


def consistent_pattern_count(x: Sequence[int], y: Sequence[int]) -> int:
    """Exact number of deletion patterns d with y(x, d) = y (integer DP)."""
    n, m = len(x), len(y)
    if m > n:
        return 0
    counts = [0] * (m + 1)
    counts[0] = 1
    for i in range(n):
        nxt = [0] * (m + 1)
        for j in range(m + 1):
            c = counts[j]
            if c == 0:
                continue
            nxt[j] += c  # delete x_i
            if j < m and x[i] == y[j]:
                nxt[j + 1] += c  # keep x_i, matching y_{j+1}
        counts = nxt
    return counts[m]
