"""Lattice emission/posterior vs. exhaustive pattern enumeration."""

import itertools
import math

import numpy as np
import pytest

from burstsync.alignment_lattice import (
    consistent_pattern_count,
    d1_posterior,
    emission_log2_prob,
)
from burstsync.deletion_model import (
    Boundary,
    DeletionParams,
    apply_deletion,
    complement,
    random_bits,
    sample_pattern,
)

from oracles import brute_d1_posterior, brute_emission, brute_pattern_count

PARAM_GRID = [DeletionParams(0.3, 0.1), DeletionParams(0.5, 0.5), DeletionParams(0.7, 0.2)]
BOUNDARIES = [Boundary(a, b) for a in (0, 1) for b in (0, 1)]


def _lattice_linear(x, y, params, boundary, d1=None):
    lg = emission_log2_prob(x, y, params, boundary, d1=d1)
    return 0.0 if lg is None else 2.0**lg


class TestEmission:
    def test_two_bit_identity_block(self):
        # x == y forces the all-keep pattern; verified against the 4-pattern sum
        x = y = (0, 1)
        for params in PARAM_GRID:
            for boundary in BOUNDARIES:
                want = brute_emission(x, y, params, boundary)
                assert _lattice_linear(x, y, params, boundary) == pytest.approx(want, abs=1e-14)

    def test_non_subsequence_is_impossible(self):
        params = DeletionParams(0.4, 0.3)
        assert emission_log2_prob((0, 0), (1,), params, Boundary(0, 0)) is None

    def test_observation_longer_than_source_rejected(self):
        with pytest.raises(ValueError):
            emission_log2_prob((0,), (0, 1), DeletionParams(0.5, 0.5), Boundary(0, 0))

    def test_matches_enumeration_on_random_instances(self):
        rng = np.random.default_rng(2024)
        checked = 0
        while checked < 200:
            n = int(rng.integers(1, 11))
            x = random_bits(rng, n)
            params = PARAM_GRID[checked % len(PARAM_GRID)]
            pattern = sample_pattern(params, n, rng)
            subseq = rng.random() < 0.8
            y = apply_deletion(x, pattern[1:-1]) if subseq else random_bits(rng, int(rng.integers(0, n + 1)))
            boundary = Boundary(int(rng.integers(0, 2)), int(rng.integers(0, 2)))
            want = brute_emission(x, y, params, boundary)
            got = _lattice_linear(x, y, params, boundary)
            assert abs(got - want) <= 1e-12
            checked += 1

    @pytest.mark.parametrize("params", PARAM_GRID)
    def test_completeness_over_subsequences(self, params):
        # the emission law is a probability distribution over distinct subsequences
        rng = np.random.default_rng(5)
        for n in (1, 4, 7, 10):
            x = random_bits(rng, n)
            for boundary in BOUNDARIES:
                total = 0.0
                seen = set()
                for pattern in itertools.product((0, 1), repeat=n):
                    y = apply_deletion(x, pattern)
                    if y in seen:
                        continue
                    seen.add(y)
                    total += _lattice_linear(x, y, params, boundary)
                assert total == pytest.approx(1.0, abs=1e-11)

    def test_d1_restrictions_sum_to_total(self):
        rng = np.random.default_rng(31)
        params = DeletionParams(0.45, 0.15)
        for _ in range(50):
            n = int(rng.integers(2, 11))
            x = random_bits(rng, n)
            pattern = sample_pattern(params, n, rng)
            y = apply_deletion(x, pattern[1:-1])
            boundary = Boundary(int(pattern[0]), int(pattern[-1]))
            total = _lattice_linear(x, y, params, boundary)
            split = _lattice_linear(x, y, params, boundary, d1=0) + _lattice_linear(
                x, y, params, boundary, d1=1
            )
            assert split == pytest.approx(total, rel=1e-12, abs=1e-300)

    def test_bit_complement_symmetry(self):
        rng = np.random.default_rng(8)
        params = DeletionParams(0.6, 0.25)
        for _ in range(30):
            n = int(rng.integers(1, 11))
            x = random_bits(rng, n)
            pattern = sample_pattern(params, n, rng)
            y = apply_deletion(x, pattern[1:-1])
            boundary = Boundary(int(pattern[0]), int(pattern[-1]))
            a = emission_log2_prob(x, y, params, boundary)
            b = emission_log2_prob(complement(x), complement(y), params, boundary)
            assert a == pytest.approx(b, rel=1e-13)


class TestPosterior:
    def test_matches_enumeration(self):
        rng = np.random.default_rng(99)
        params = DeletionParams(0.5, 0.2)
        for _ in range(100):
            n = int(rng.integers(1, 11))
            x = random_bits(rng, n)
            pattern = sample_pattern(params, n, rng)
            y = apply_deletion(x, pattern[1:-1])
            boundary = Boundary(int(pattern[0]), int(pattern[-1]))
            want = brute_d1_posterior(x, y, params, boundary)
            got = d1_posterior(x, y, params, boundary)
            assert abs(got - want) <= 1e-12

    def test_single_deletion_in_a_run_splits_evenly(self):
        # three equally weighted single-deletion explanations as bursts vanish
        params = DeletionParams(0.5, 1e-4)
        q = d1_posterior((0, 0, 0, 1), (0, 0, 1), params, Boundary(0, 0))
        assert abs(q - 1.0 / 3.0) <= 0.01

    def test_burst_pair_in_a_periodic_prefix_splits_evenly(self):
        params = DeletionParams(0.5, 1e-4)
        q = d1_posterior((0, 1, 0, 1, 1), (0, 1, 1), params, Boundary(0, 0))
        assert abs(q - 1.0 / 3.0) <= 0.01

    def test_equal_lengths_force_no_deletion(self):
        params = DeletionParams(0.4, 0.4)
        x = (1, 0, 1, 1)
        assert d1_posterior(x, x, params, Boundary(0, 0)) == 0.0

    def test_inconsistent_pair_raises(self):
        with pytest.raises(ValueError):
            d1_posterior((0, 0), (1,), DeletionParams(0.5, 0.5), Boundary(0, 0))

    def test_posterior_in_unit_interval(self):
        rng = np.random.default_rng(123)
        params = DeletionParams(0.3, 0.3)
        for _ in range(50):
            n = int(rng.integers(1, 9))
            x = random_bits(rng, n)
            pattern = sample_pattern(params, n, rng)
            y = apply_deletion(x, pattern[1:-1])
            boundary = Boundary(int(pattern[0]), int(pattern[-1]))
            q = d1_posterior(x, y, params, boundary)
            assert 0.0 <= q <= 1.0


class TestPatternCount:
    def test_single_run_deletion(self):
        assert consistent_pattern_count((0, 0, 0, 1), (0, 0, 1)) == 3

    def test_periodic_prefix_counts_all_patterns(self):
        # three contiguous-burst explanations plus the split pattern (0,0,1,0,1)
        assert consistent_pattern_count((0, 1, 0, 1, 1), (0, 1, 1)) == 4

    def test_identity(self):
        x = (1, 1, 0, 1, 0, 0)
        assert consistent_pattern_count(x, x) == 1

    def test_matches_enumeration(self):
        rng = np.random.default_rng(17)
        for _ in range(60):
            n = int(rng.integers(0, 11))
            x = random_bits(rng, n)
            m = int(rng.integers(0, n + 1)) if n else 0
            y = random_bits(rng, m)
            assert consistent_pattern_count(x, y) == brute_pattern_count(x, y)

    def test_longer_observation_gives_zero(self):
        assert consistent_pattern_count((0,), (0, 1)) == 0
