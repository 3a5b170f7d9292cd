"""Tests for the synthetic benchmark generator."""

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from mwkpp import (BENCH_CONFIG_NAMES, ConfigSpec, InputError, ParseError,
                   benchmark_suite, generate, parse_config_name)
from mwkpp.rng import rng_from
from mwkpp.synth import MIN_CLUSTER_SIZE, _cluster_sizes


class TestConfigName:
    def test_parse_fields(self):
        spec = parse_config_name("2000x20-10 +10NF")
        assert (spec.n_points, spec.m_informative, spec.k_clusters,
                spec.n_noise) == (2000, 20, 10, 10)

    def test_parse_more_examples(self):
        assert parse_config_name("1000x4-3 +2NF").n_noise == 2
        spec = parse_config_name("100x2-2 +0NF")
        assert spec.n_noise == 0 and spec.k_clusters == 2

    def test_name_round_trip(self):
        for name in BENCH_CONFIG_NAMES:
            assert parse_config_name(name).name == name

    def test_malformed(self):
        for bad in ("1000y4-5 +2NF", "1000x4-5", "1000x4-5 2NF", "x-+NF", ""):
            with pytest.raises(ParseError):
                parse_config_name(bad)

    def test_infeasible_sizes(self):
        with pytest.raises(InputError):
            ConfigSpec(n_points=30, m_informative=2, k_clusters=2, n_noise=0)
        with pytest.raises(InputError):
            ConfigSpec(n_points=100, m_informative=0, k_clusters=2, n_noise=0)
        with pytest.raises(InputError):
            ConfigSpec(n_points=100, m_informative=2, k_clusters=2, n_noise=-1)


class TestClusterSizes:
    def test_minimum_and_sum_across_seeds(self):
        for seed in range(100):
            sizes = _cluster_sizes(130, 4, rng_from(seed))
            assert sizes.sum() == 130
            assert sizes.min() >= MIN_CLUSTER_SIZE

    def test_single_cluster(self):
        assert_array_equal(_cluster_sizes(55, 1, rng_from(0)), [55])

    def test_tight_fit(self):
        sizes = _cluster_sizes(40, 2, rng_from(3))
        assert_array_equal(sizes, [20, 20])


class TestGenerate:
    def test_shapes_and_mask(self):
        ds = generate(ConfigSpec(1000, 4, 5, 2, seed=1))
        assert ds.X.shape == (1000, 6)
        assert ds.labels.shape == (1000,)
        assert set(np.unique(ds.labels)) == set(range(5))
        assert_array_equal(ds.informative_mask,
                           [True] * 4 + [False] * 2)
        assert ds.feature_names == ["f1", "f2", "f3", "f4", "nf1", "nf2"]

    def test_no_noise_all_informative(self):
        ds = generate(ConfigSpec(100, 3, 2, 0, seed=2))
        assert ds.informative_mask.all()
        assert ds.X.shape == (100, 3)

    def test_bitwise_reproducible(self):
        a = generate(ConfigSpec(200, 3, 3, 1, seed=42))
        b = generate(ConfigSpec(200, 3, 3, 1, seed=42))
        assert_array_equal(a.X, b.X)
        assert_array_equal(a.labels, b.labels)

    def test_distinct_seeds_distinct_data(self):
        a = generate(ConfigSpec(200, 3, 3, 1, seed=1))
        b = generate(ConfigSpec(200, 3, 3, 1, seed=2))
        assert not np.array_equal(a.X, b.X)

    def test_noise_bounded_by_informative_range(self):
        ds = generate(ConfigSpec(500, 4, 3, 3, seed=7))
        inf_block = ds.X[:, :4]
        noise = ds.X[:, 4:]
        assert noise.min() >= inf_block.min()
        assert noise.max() <= inf_block.max()

    def test_cluster_variances_match_drawn_sigma(self):
        # replay the generator's draw order to recover sigma^2 per cluster
        spec = ConfigSpec(1000, 4, 3, 0, seed=11)
        ds = generate(spec)
        rng = rng_from(spec.seed)
        rng.normal(0.0, 1.0, size=(3, 4))
        sigma2 = rng.uniform(0.5, 1.5, size=3)
        for l in range(3):
            rows = ds.X[ds.labels == l]
            if rows.shape[0] < 100:
                continue
            var = rows.var(axis=0, ddof=1)
            se = sigma2[l] * np.sqrt(2.0 / (rows.shape[0] - 1))
            assert np.all(np.abs(var - sigma2[l]) <= 3.5 * se)

    def test_noise_uncorrelated_with_labels(self):
        ds = generate(ConfigSpec(1000, 4, 3, 2, seed=13))
        for j in (4, 5):
            col = ds.X[:, j]
            for c in range(3):
                indicator = (ds.labels == c).astype(float)
                corr = np.corrcoef(col, indicator)[0, 1]
                assert abs(corr) < 0.1


class TestSuite:
    def test_all_configs_in_order(self):
        suite = benchmark_suite(1, base_seed=5)
        assert [name for name, _ in suite] == list(BENCH_CONFIG_NAMES)

    def test_datasets_per_config(self):
        suite = benchmark_suite(3, base_seed=5,
                                config_names=("100x2-2 +1NF",))
        name, datasets = suite[0]
        assert len(datasets) == 3
        assert datasets[0].name == "100x2-2 +1NF"

    def test_replicates_pairwise_distinct(self):
        (_, datasets), = benchmark_suite(3, base_seed=9,
                                         config_names=("100x2-2 +1NF",))
        for i in range(3):
            for j in range(i + 1, 3):
                assert not np.array_equal(datasets[i].X, datasets[j].X)

    def test_validation(self):
        with pytest.raises(InputError):
            benchmark_suite(0)
