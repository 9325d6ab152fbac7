"""Sampler and baseline tests, including the exact-enumeration oracle checks."""

import itertools
import math

import numpy as np
import pytest

from hyperhomophily import (
    Hypergraph,
    InsufficientPopulationError,
    SamplerConfig,
    StateSpaceError,
    estimate_baseline,
    exact_baseline,
    hill_number,
    HyperedgeComposition,
    sample_weighted_k_set,
    sample_weighted_k_sets,
)
from hyperhomophily.nullmodel import _exact_expected_diversity


def sequential_set_probability(weights, target):
    """Independent oracle: sum the sequential draw probabilities over every
    ordering of the target set."""
    total = 0.0
    for order in itertools.permutations(target):
        prob = 1.0
        remaining = float(sum(weights))
        for node in order:
            prob *= weights[node] / remaining
            remaining -= weights[node]
        total += prob
    return total


def sequential_expected_diversity(attrs, weights, k, order_q=1.0):
    """Independent oracle over itertools.permutations (no shared code with
    the production DFS)."""
    idx = [i for i, w in enumerate(weights) if w > 0]
    expectation = 0.0
    for perm in itertools.permutations(idx, k):
        prob = 1.0
        remaining = float(sum(weights[i] for i in idx))
        counts = {}
        for node in perm:
            prob *= weights[node] / remaining
            remaining -= weights[node]
            counts[attrs[node]] = counts.get(attrs[node], 0) + 1
        expectation += prob * hill_number(HyperedgeComposition(counts), order_q)
    return expectation


class TestSampler:
    def test_full_population_forced(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            assert list(sample_weighted_k_set(np.ones(4), 4, rng)) == [0, 1, 2, 3]

    def test_single_positive_weight(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            assert list(sample_weighted_k_set(np.array([1.0, 0, 0]), 1, rng)) == [0]

    def test_zero_weight_never_drawn(self):
        rng = np.random.default_rng(1)
        draws = sample_weighted_k_sets(np.array([2.0, 0.0, 1.0, 1.0]), 2, 500, rng)
        assert not np.any(draws == 1)

    def test_pair_probability_matches_sequential_oracle(self):
        # weights (2,1,1): P({0,1}) = 2/4*1/2 + 1/4*2/3 = 5/12
        weights = np.array([2.0, 1.0, 1.0])
        expected = sequential_set_probability(weights, (0, 1))
        assert expected == pytest.approx(5 / 12, abs=1e-15)
        n = 1_000_000
        rng = np.random.default_rng(20240601)
        draws = sample_weighted_k_sets(weights, 2, n, rng)
        hits = np.count_nonzero((draws[:, 0] == 0) & (draws[:, 1] == 1))
        se = math.sqrt(expected * (1 - expected) / n)
        assert abs(hits / n - expected) <= 3 * se

    def test_insufficient_population(self):
        rng = np.random.default_rng(0)
        with pytest.raises(InsufficientPopulationError):
            sample_weighted_k_set(np.array([1.0, 0.0]), 2, rng)

    def test_negative_weights_rejected(self):
        rng = np.random.default_rng(0)
        with pytest.raises(ValueError):
            sample_weighted_k_set(np.array([1.0, -1.0]), 1, rng)

    def test_weight_scaling_leaves_draws_unchanged(self):
        weights = np.array([3.0, 1.0, 2.0, 5.0])
        a = sample_weighted_k_sets(weights, 2, 200, np.random.default_rng(7))
        b = sample_weighted_k_sets(17.5 * weights, 2, 200, np.random.default_rng(7))
        assert np.array_equal(a, b)


def two_bucket_graph():
    """Four nodes A,A,B,B with uniform pair degrees."""
    return Hypergraph([0, 0, 1, 1], [[0, 1], [2, 3]])


class TestEstimate:
    def test_pure_population(self):
        h = Hypergraph([0, 0, 0], [[0, 1], [1, 2]])
        est = estimate_baseline(h, 2, SamplerConfig(samples=500, seed=1))
        assert est.mean == 1.0
        assert est.std_error == 0.0

    def test_two_attribute_uniform_pairs(self):
        # enumeration of the 6 unordered pairs: 2 pure, 4 mixed -> 5/3
        est = estimate_baseline(two_bucket_graph(), 2, SamplerConfig(samples=20_000, seed=5))
        assert abs(est.mean - 5 / 3) <= 3 * est.std_error

    def test_metadata_fields(self):
        cfg = SamplerConfig(samples=100, seed=9, diversity_order=2.0)
        est = estimate_baseline(two_bucket_graph(), 2, cfg)
        assert (est.k, est.samples, est.seed, est.diversity_order) == (2, 100, 9, 2.0)

    def test_seed_determinism(self):
        cfg = SamplerConfig(samples=2000, seed=77)
        a = estimate_baseline(two_bucket_graph(), 2, cfg)
        b = estimate_baseline(two_bucket_graph(), 2, cfg)
        assert a == b

    def test_k_below_two_rejected(self):
        with pytest.raises(ValueError):
            estimate_baseline(two_bucket_graph(), 1, SamplerConfig(samples=10))

    def test_bounds(self):
        rng = np.random.default_rng(3)
        attrs = rng.integers(0, 3, 8)
        edges = [list(rng.choice(8, 3, replace=False)) for _ in range(6)]
        h = Hypergraph(attrs, edges)
        est = estimate_baseline(h, 3, SamplerConfig(samples=3000, seed=2))
        present = len(set(int(a) for a in attrs))
        assert 1.0 <= est.mean <= min(3, present)

    def test_std_error_scaling(self):
        h = Hypergraph([0, 0, 1, 1, 2], [[0, 2, 4], [1, 3, 4]])
        ses = []
        for samples in (1_000, 10_000, 100_000):
            est = estimate_baseline(h, 3, SamplerConfig(samples=samples, seed=11))
            ses.append(est.std_error)
        for a, b in zip(ses, ses[1:]):
            ratio = a / b  # expect ~sqrt(10) ~ 3.16
            assert math.sqrt(10) / 2 <= ratio <= 2 * math.sqrt(10)

    def test_total_degree_option(self):
        # node 4 gains weight from its size-3 edge only under total degree
        h = Hypergraph([0, 0, 1, 1, 1], [[0, 2], [1, 3], [2, 3, 4]])
        base = estimate_baseline(h, 2, SamplerConfig(samples=4000, seed=1))
        total = estimate_baseline(
            h, 2, SamplerConfig(samples=4000, seed=1, use_total_degree=True)
        )
        assert base.mean != total.mean


class TestExact:
    def test_pure_population(self):
        h = Hypergraph([0, 0, 0], [[0, 1], [1, 2]])
        assert exact_baseline(h, 2) == pytest.approx(1.0, abs=1e-12)

    def test_uniform_pairs_exactly_five_thirds(self):
        # 12 ordered pairs: 4 same-attribute, 8 cross
        assert exact_baseline(two_bucket_graph(), 2) == pytest.approx(5 / 3, abs=1e-12)

    def test_matches_permutation_oracle(self):
        rng = np.random.default_rng(8)
        attrs = rng.integers(0, 3, 6)
        weights = rng.integers(0, 4, 6).astype(float)
        if weights.sum() == 0:
            weights[0] = 1.0
        for k in (2, 3):
            if np.count_nonzero(weights) < k:
                continue
            ours = _exact_expected_diversity(attrs, weights, k, 1.0)
            oracle = sequential_expected_diversity(attrs, weights, k)
            assert ours == pytest.approx(oracle, abs=1e-12)

    def test_monte_carlo_agrees_with_oracle(self):
        # weights (2,1,1) realized as 2-degrees via a multiset of pair edges
        h = Hypergraph([0, 1, 1], [[0, 1], [0, 2]])
        assert list(np.bincount(h.edge_nodes)) == [2, 1, 1]
        exact = exact_baseline(h, 2)
        est = estimate_baseline(h, 2, SamplerConfig(samples=20_000, seed=13))
        assert abs(est.mean - exact) <= 3 * est.std_error

    def test_guard(self):
        n = 60
        h = Hypergraph([0, 1] * (n // 2), [list(range(n))])
        with pytest.raises(StateSpaceError):
            exact_baseline(h, n)

    def test_weight_scaling_invariance(self):
        attrs = np.array([0, 1, 0, 2])
        weights = np.array([1.0, 2.0, 3.0, 4.0])
        a = _exact_expected_diversity(attrs, weights, 2, 1.0)
        b = _exact_expected_diversity(attrs, weights * 0.25, 2, 1.0)
        assert a == pytest.approx(b, abs=1e-12)

    def test_insufficient_population(self):
        h = Hypergraph([0, 1], [[0, 1]])
        with pytest.raises(InsufficientPopulationError):
            exact_baseline(h, 3)


def random_realizable_instance(rng, max_degree=5):
    """Hypergraph whose k-degrees are bounded by ``max_degree``; returns (h, k)."""
    n = int(rng.integers(4, 11))
    k = int(rng.integers(2, 5))
    attrs = rng.integers(0, int(rng.integers(2, 5)), n)
    degrees = np.zeros(n, dtype=int)
    edges = []
    for _ in range(int(rng.integers(1, 9))):
        available = np.flatnonzero(degrees < max_degree)
        if available.size < k:
            break
        edge = rng.choice(available, k, replace=False)
        degrees[edge] += 1
        edges.append(list(edge))
    return Hypergraph(attrs, edges), k


class TestOracleAgreement:
    def test_hundred_seeds(self):
        # statistical contract: |MC mean - exact| <= 3 SE in >= 99% of runs;
        # the 1e-9 slack only absorbs float noise when SE is exactly 0
        rng = np.random.default_rng(424242)
        failures = 0
        for _ in range(100):
            h, k = random_realizable_instance(rng)
            exact = exact_baseline(h, k)
            cfg = SamplerConfig(samples=10_000, seed=int(rng.integers(2**32)))
            est = estimate_baseline(h, k, cfg)
            if abs(est.mean - exact) > 3 * est.std_error + 1e-9:
                failures += 1
        assert failures <= 1
