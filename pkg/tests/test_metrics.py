"""Tests for the evaluation metrics."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mwkpp import (InputError, adjusted_rand_index, clustering_entropy,
                   contingency_table, feature_recovery)

H_TWO_THIRDS = -(2 / 3) * np.log2(2 / 3) - (1 / 3) * np.log2(1 / 3)


def pair_counting_ari(a, b):
    """Independent O(n^2) oracle: chance-corrected pair agreement."""
    a = np.asarray(a)
    b = np.asarray(b)
    n = a.shape[0]
    index = exp_a = exp_b = 0
    for i in range(n):
        for j in range(i + 1, n):
            same_a = a[i] == a[j]
            same_b = b[i] == b[j]
            index += same_a and same_b
            exp_a += same_a
            exp_b += same_b
    total = n * (n - 1) // 2
    expected = exp_a * exp_b / total
    max_index = (exp_a + exp_b) / 2
    if max_index == expected:
        return 1.0
    return (index - expected) / (max_index - expected)


class TestContingency:
    def test_counts(self):
        t = contingency_table([0, 0, 1, 1], [0, 1, 1, 1])
        np.testing.assert_array_equal(t, [[1, 1], [0, 2]])

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            contingency_table([0, 1], [0, 1, 2])


class TestAdjustedRand:
    def test_perfect_agreement(self):
        assert adjusted_rand_index([0, 0, 1, 1], [0, 0, 1, 1]) == 1.0

    def test_relabeling_invariance(self):
        assert adjusted_rand_index([0, 0, 1, 1], [7, 7, 3, 3]) == 1.0

    def test_crossed_pairs_exactly_minus_half(self):
        assert adjusted_rand_index([0, 0, 1, 1], [0, 1, 0, 1]) == -0.5

    def test_symmetry(self):
        rng = np.random.default_rng(41)
        for _ in range(10):
            a = rng.integers(0, 4, size=30)
            b = rng.integers(0, 3, size=30)
            assert adjusted_rand_index(a, b) == adjusted_rand_index(b, a)

    def test_matches_pair_counting_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(20):
            n = int(rng.integers(5, 60))
            a = rng.integers(0, int(rng.integers(2, 6)), size=n)
            b = rng.integers(0, int(rng.integers(2, 6)), size=n)
            assert_allclose(adjusted_rand_index(a, b), pair_counting_ari(a, b),
                            atol=1e-12)

    def test_degenerate_denominator(self):
        assert adjusted_rand_index([2, 2, 2], [0, 0, 0]) == 1.0
        assert adjusted_rand_index([0, 1, 2], [0, 0, 0]) == 0.0
        assert adjusted_rand_index([0, 1, 2], [5, 6, 7]) == 1.0


class TestClusteringEntropy:
    def test_pure_clusters_zero(self):
        assert clustering_entropy([0, 0, 1, 1], [4, 4, 9, 9]) == 0.0

    def test_single_cluster_two_equal_classes_one_bit(self):
        assert_allclose(clustering_entropy([0, 1, 0, 1], [0, 0, 0, 0]), 1.0)

    def test_hand_value(self):
        # clusters {A,A,B} and {B,B}: (3/5) H(2/3,1/3) + (2/5) 0
        got = clustering_entropy([0, 0, 1, 1, 1], [0, 0, 0, 1, 1])
        assert_allclose(got, 0.6 * H_TWO_THIRDS, rtol=1e-12)

    def test_relabeling_invariance(self):
        rng = np.random.default_rng(43)
        truth = rng.integers(0, 3, size=40)
        pred = rng.integers(0, 4, size=40)
        base = clustering_entropy(truth, pred)
        assert_allclose(clustering_entropy(truth + 10, pred * 7 + 1), base,
                        rtol=1e-12)

    def test_bounded_by_log_classes(self):
        rng = np.random.default_rng(44)
        for _ in range(10):
            c = int(rng.integers(2, 6))
            truth = rng.integers(0, c, size=60)
            pred = rng.integers(0, 5, size=60)
            assert clustering_entropy(truth, pred) <= np.log2(c) + 1e-12


class TestFeatureRecovery:
    def test_exact_set_is_one(self):
        mask = np.array([True, True, False, False])
        assert feature_recovery([0, 1], mask) == 1.0

    def test_total_miss_is_zero(self):
        mask = np.array([True, True, False, False])
        assert feature_recovery([2, 3], mask) == 0.0

    def test_hand_value(self):
        mask = np.array([True] * 4 + [False] * 2)
        assert_allclose(feature_recovery([0, 1, 2, 4], mask), 4 / 6)

    def test_one_iff_exact(self):
        rng = np.random.default_rng(45)
        for _ in range(20):
            m = int(rng.integers(3, 10))
            r = int(rng.integers(1, m))
            mask = np.zeros(m, dtype=bool)
            mask[rng.choice(m, size=r, replace=False)] = True
            sel = rng.choice(m, size=r, replace=False)
            score = feature_recovery(sel, mask)
            exact = set(sel) == set(np.flatnonzero(mask))
            assert (score == 1.0) == exact

    def test_size_mismatch_rejected(self):
        mask = np.array([True, False, False])
        with pytest.raises(InputError):
            feature_recovery([0, 1], mask)

    def test_bad_indices_rejected(self):
        mask = np.array([True, False])
        with pytest.raises(InputError):
            feature_recovery([5], mask)
        with pytest.raises(InputError):
            feature_recovery([0, 0], np.array([True, True, False]))

    def test_index_list_as_mask_rejected(self):
        # a list of informative indices is not a mask
        with pytest.raises(InputError):
            feature_recovery([0, 2], [0, 2, 5, 7])

    def test_zero_one_integer_mask_accepted(self):
        assert feature_recovery([0, 1], [1, 1, 0, 0]) == 1.0
