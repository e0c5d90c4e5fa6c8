"""Closed-form small-beta expansions of the minimum synchronization rate.

For a fixed burst-exit probability alpha and vanishing burst-start
probability beta, the minimum rate expands as

    -beta log2 beta + beta * ((1 + h2(alpha)) / alpha + log2 e - C)
                    + O(beta^(2-eps)),

the sum of three components: the deleted-content fraction beta/alpha, the
location information -beta log2 beta + beta h2(alpha)/alpha + beta log2 e,
and the unlearnable burst-position ambiguity -C beta.  The constant

    C = sum_{l >= 1} 2^(-l-1) l log2 l  ~ 1.29 bits per burst

is the expected ambiguity of a burst inside the first period-b run of the
source (extent geometric(1/2), ambiguity h2(1/l) among l placements), and is
the same for every burst length b.  C is always computed from its series
with a certified tail bound, never hard-coded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .deletion_model import DeletionParams
from .exact_entropy import binary_entropy

LOG2_E = math.log2(math.e)


@lru_cache(maxsize=None)
def burst_ambiguity_constant(tolerance: float = 1e-12) -> float:
    """C = sum_{l>=1} 2^(-l-1) l log2 l, truncated with a certified tail.

    For l >= L the terms are bounded by 2^(-l-1) l^2 (since log2 l <= l), and

        sum_{l>=L} 2^(-l-1) l^2 = 2^(-L) (L^2 + 2L + 3),

    so the partial sum through L-1 is within `tolerance` once that closed
    form drops below it.
    """
    if tolerance <= 0.0:
        raise ValueError("tolerance must be positive")
    L = 2
    while 2.0**-L * (L * L + 2.0 * L + 3.0) >= tolerance:
        L += 1
    return math.fsum(
        2.0 ** -(l + 1) * l * math.log2(l) for l in range(2, L)  # l = 1 term is 0
    )


@dataclass(frozen=True)
class ExpansionTerms:
    """Two-term expansion value = leading * (-beta log2 beta) + linear * beta."""

    leading: float
    linear: float

    def value_at(self, beta: float) -> float:
        if not 0.0 < beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        return self.leading * (-beta * math.log2(beta)) + self.linear * beta


def theorem_expansion(alpha: float, tolerance: float = 1e-12) -> ExpansionTerms:
    """Expansion coefficients of the minimum rate at fixed alpha."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    linear = (1.0 + binary_entropy(alpha)) / alpha + LOG2_E - burst_ambiguity_constant(
        tolerance
    )
    return ExpansionTerms(leading=1.0, linear=linear)


def component_expansions(
    params: DeletionParams, beta: float | None = None
) -> tuple[float, float, float]:
    """Leading-order values of the three rate components at the working beta.

    Returns (content, location, ambiguity): deleted-content fraction
    beta/alpha, location information, and minus the burst-position ambiguity
    C beta.  Their sum is exactly `min_rate_expansion`.
    """
    b = params.beta if beta is None else beta
    if not 0.0 < b < 1.0:
        raise ValueError("beta must lie in (0, 1)")
    a = params.alpha
    content = b / a
    location = -b * math.log2(b) + b * binary_entropy(a) / a + b * LOG2_E
    ambiguity = -burst_ambiguity_constant() * b
    return content, location, ambiguity


def min_rate_expansion(params: DeletionParams, beta: float | None = None) -> float:
    """Two-term minimum-rate expansion; defined as the sum of its components."""
    content, location, ambiguity = component_expansions(params, beta)
    return content + location + ambiguity


def iid_min_rate_expansion(d: float) -> float:
    """Minimum-rate expansion -d log2 d + d (log2(2e) - C) for iid deletions."""
    if not 0.0 < d < 1.0:
        raise ValueError("deletion probability must lie in (0, 1)")
    return -d * math.log2(d) + d * (1.0 + LOG2_E - burst_ambiguity_constant())


def mutual_info_expansion(params: DeletionParams, beta: float | None = None) -> float:
    """Expansion of the per-bit mutual information across the deletion channel
    with iid fair inputs: exactly 1 - min_rate_expansion.

    A lower bound on the channel capacity if the iid-deletion capacity
    formula extends to Markov deletion patterns; labeled as the mutual
    information expansion, not as capacity.
    """
    return 1.0 - min_rate_expansion(params, beta)


def long_burst_rate(params: DeletionParams) -> float:
    """Leading rate d in the long-burst regime (alpha and beta small together).

    Content dominates: location information per burst grows only
    logarithmically with burst length, so the rate is d + O(beta^(1-eps)).
    """
    return params.stationary_fraction
