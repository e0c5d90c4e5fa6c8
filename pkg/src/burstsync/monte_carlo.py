"""Monte Carlo estimators for block lengths beyond enumeration reach.

Each estimator draws (source block, indicator pattern) pairs from the true
law, pushes them through the compiled lattice kernels, and averages a
per-sample statistic whose expectation is the target quantity:

  * residual uncertainty E_n:  h2 of the posterior of the first indicator,
  * emission rate J_n:         d - (1/n) log2 p(y | x, boundary),
  * minimum rate:              d + H(D_1|D_0) - E_n_estimate (upper-biased at
                               finite n because E_n is nondecreasing in n).

Sampling is reproducible bit-for-bit: sample i uses a splitmix64 stream
seeded from (seed, i), per-sample values land in an array, and the reduction
(numpy pairwise mean/variance) runs in a fixed order, so estimates do not
depend on how many kernel threads ran.

The module also hosts the burst-typicality check on a pattern prefix of
length ~ k log2(1/beta): a typical prefix has at most one run of 1s and a
capped number of 1s.  Its violation probability decays roughly like
beta^(2-eps) as beta -> 0 (the polylog window factors eat into the exponent
at moderate beta).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .deletion_model import DeletionParams, kernel_power
from .exact_entropy import pattern_entropy_rate

set_workers = _kernels.set_workers


@dataclass(frozen=True)
class EstimateWithError:
    """Point estimate with its standard error and provenance."""

    mean: float
    stderr: float
    samples: int
    seed: int
    note: str = ""


def _summarize(values: np.ndarray, seed: int, note: str = "") -> EstimateWithError:
    n = values.shape[0]
    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1)) / math.sqrt(n) if n > 1 else 0.0
    return EstimateWithError(mean=mean, stderr=stderr, samples=n, seed=seed, note=note)


def residual_uncertainty_values(
    params: DeletionParams, n: int, samples: int, seed: int
) -> np.ndarray:
    """Per-sample h2(first-indicator posterior); exposed for reuse."""
    if n < 1 or samples < 1:
        raise ValueError("need n >= 1 and samples >= 1")
    out = np.empty(samples)
    _kernels.residual_uncertainty_samples(
        n, params.alpha, params.beta, np.uint64(seed), samples, out
    )
    return out


def estimate_residual_uncertainty(
    params: DeletionParams, n: int, samples: int, seed: int
) -> EstimateWithError:
    """Unbiased estimate of E_n = H(D_1 | X, Y, boundary)."""
    return _summarize(residual_uncertainty_values(params, n, samples, seed), seed)


def estimate_emission_rate(
    params: DeletionParams, n: int, samples: int, seed: int
) -> EstimateWithError:
    """Unbiased estimate of J_n = d + (1/n) H(Y | X, boundary)."""
    if n < 1 or samples < 1:
        raise ValueError("need n >= 1 and samples >= 1")
    reach = kernel_power(params, n + 1)
    log2_reach = np.log2(reach)
    out = np.empty(samples)
    _kernels.emission_nll_samples(
        n, params.alpha, params.beta, np.uint64(seed), samples, log2_reach, out
    )
    est = _summarize(out, seed)
    d = params.stationary_fraction
    return EstimateWithError(
        mean=d + est.mean, stderr=est.stderr, samples=samples, seed=seed
    )


def estimate_min_rate(
    params: DeletionParams, n: int, samples: int, seed: int
) -> EstimateWithError:
    """d + H(D_1|D_0) - E_n_hat; an upper estimate of the limiting minimum rate.

    The bias direction is known: the subtracted uncertainty is nondecreasing
    in n, so at finite n too little is subtracted.
    """
    en = estimate_residual_uncertainty(params, n, samples, seed)
    d = params.stationary_fraction
    return EstimateWithError(
        mean=d + pattern_entropy_rate(params) - en.mean,
        stderr=en.stderr,
        samples=samples,
        seed=seed,
        note="upper-biased at finite n: E_n increases toward its limit",
    )


@dataclass(frozen=True)
class TypicalityConfig:
    """Window constant and derived prefix bounds for the typicality check."""

    k: float
    window: int
    ones_cap: int

    @classmethod
    def for_params(cls, params: DeletionParams) -> "TypicalityConfig":
        # k = max(6, -6 / log2(1 - alpha)) keeps k > 0 and makes a burst
        # longer than the ones cap as unlikely as beta^2.
        k = max(6.0, -6.0 / math.log2(1.0 - params.alpha))
        log_inv_beta = math.log2(1.0 / params.beta)
        return cls(
            k=k,
            window=math.ceil(k * log_inv_beta),
            ones_cap=math.ceil((k / 3.0) * log_inv_beta),
        )

    def __post_init__(self) -> None:
        if self.window < 1 or self.ones_cap < 1:
            raise ValueError("window and ones_cap must be positive")


def is_typical(full_pattern, config: TypicalityConfig) -> bool:
    """True iff the prefix (D_0 .. D_window) has <= 1 run of 1s and few 1s."""
    if len(full_pattern) <= config.window:
        raise ValueError(
            f"pattern of length {len(full_pattern)} is shorter than the "
            f"window prefix (need > {config.window})"
        )
    prefix = full_pattern[: config.window + 1]
    ones = 0
    runs = 0
    prev = 0
    for bit in prefix:
        if bit:
            ones += 1
            if not prev:
                runs += 1
        prev = bit
    return runs <= 1 and ones <= config.ones_cap


def typicality_violation_rate(
    params: DeletionParams, samples: int, seed: int
) -> EstimateWithError:
    """Monte Carlo fraction of non-typical patterns at n = 2 * window."""
    if samples < 1:
        raise ValueError("samples must be positive")
    config = TypicalityConfig.for_params(params)
    n = 2 * config.window
    rng = np.random.default_rng(seed)
    d = params.stationary_fraction
    # vectorized stationary-start chain over the prefix only (the block tail
    # beyond the window cannot affect typicality)
    length = config.window + 1
    u = rng.random((samples, n + 2))[:, :length]
    pats = np.empty((samples, length), dtype=np.int8)
    pats[:, 0] = u[:, 0] < d
    for i in range(1, length):
        prev = pats[:, i - 1]
        pats[:, i] = np.where(prev == 0, u[:, i] < params.beta, u[:, i] >= params.alpha)
    ones = pats.sum(axis=1)
    starts = (np.diff(pats, axis=1, prepend=0) == 1).sum(axis=1)
    violated = (starts >= 2) | (ones > config.ones_cap)
    rate = float(np.mean(violated))
    stderr = math.sqrt(max(rate * (1.0 - rate), 0.0) / samples)
    return EstimateWithError(
        mean=rate,
        stderr=stderr,
        samples=samples,
        seed=seed,
        note=f"window={config.window} ones_cap={config.ones_cap} n={n}",
    )
