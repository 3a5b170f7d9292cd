"""Acceptance gate.

One test per acceptance criterion, each printing a single PASS/FAIL line
with the measured quantities. Run with output enabled to see the lines:

    pytest tests/test_acceptance.py -v -s

Criteria 1, 2 and 7 finish in well under 30 seconds. Criteria 3 through 6
run the desk-scale benchmarks (10 datasets per configuration, 25 restarts,
coarse exponent grid, plus a 50,000-point scalability run) and take
roughly 40 minutes in total on a single core.
"""

import math
import time

import numpy as np
import pytest

from mwkpp.audit import (
    SelectionConditionInputs,
    audit_weight_stack,
    selection_condition,
    sensitivity_sum,
    weight_denominator,
)
from mwkpp.bench import run_clustering_bench, run_selection_bench
from mwkpp.dataio import normalize_range
from mwkpp.engine import mwk_fit, weights_from_dispersions
from mwkpp.metrics import adjusted_rand_index, clustering_entropy, feature_recovery
from mwkpp.minkowski import minkowski_center
from mwkpp.selection import COARSE_P_GRID, fs_mwkpp, sfs_mwkpp, subsample_size
from mwkpp.synth import ConfigSpec, generate

BENCH_CONFIGS = ("1000x10-5 +5NF", "2000x20-10 +10NF")

# published best-exponent mean ARI targets for the two configurations
PUBLISHED_BEST_ARI = {"1000x10-5 +5NF": 0.70, "2000x20-10 +10NF": 0.78}

ACCEPT_SEED = 0


def _verdict(num: int, ok: bool, detail: str) -> None:
    line = "%s criterion %d: %s" % ("PASS" if ok else "FAIL", num, detail)
    print("\n" + line, flush=True)
    assert ok, line


@pytest.fixture(scope="session")
def clustering_bench():
    return run_clustering_bench(BENCH_CONFIGS, datasets_per_config=10,
                                n_runs=25, p_grid=COARSE_P_GRID,
                                seed=ACCEPT_SEED)


@pytest.fixture(scope="session")
def selection_bench():
    return run_selection_bench(BENCH_CONFIGS, datasets_per_config=10,
                               p_grid=COARSE_P_GRID, seed=ACCEPT_SEED)


def _pair_counting_ari(a: np.ndarray, b: np.ndarray) -> float:
    """O(n^2) reference: classify every point pair and apply the
    adjusted-for-chance index formula directly."""
    n = a.size
    both = a_only = b_only = 0
    for i in range(n):
        for j in range(i + 1, n):
            sa = a[i] == a[j]
            sb = b[i] == b[j]
            if sa and sb:
                both += 1
            elif sa:
                a_only += 1
            elif sb:
                b_only += 1
    total = n * (n - 1) // 2
    sum_a = both + a_only
    sum_b = both + b_only
    expected = sum_a * sum_b / total
    maximum = (sum_a + sum_b) / 2.0
    if maximum == expected:
        return 1.0 if np.array_equal(a, b) else 0.0
    return (both - expected) / (maximum - expected)


def test_criterion_1_unit_properties():
    failures = []

    # weight rows live on the simplex
    rng = np.random.default_rng(10)
    worst_sum = 0.0
    for _ in range(200):
        k = int(rng.integers(1, 6))
        m = int(rng.integers(2, 13))
        D = rng.uniform(0.0, 5.0, size=(k, m))
        p = float(rng.uniform(1.05, 3.5))
        W = weights_from_dispersions(D, p)
        worst_sum = max(worst_sum, float(np.abs(W.sum(axis=1) - 1.0).max()))
    if worst_sum > 1e-9:
        failures.append("simplex deviation %.2e" % worst_sum)

    # exact-mode objective never increases along the iteration history
    worst_rise = 0.0
    for t in range(50):
        rng_t = np.random.default_rng(100 + t)
        n = int(rng_t.integers(30, 201))
        m = int(rng_t.integers(2, 11))
        k = int(rng_t.integers(2, 6))
        p = float(rng_t.uniform(1.1, 3.0))
        X = rng_t.normal(size=(n, m))
        res = mwk_fit(X, k, p, mode="exact", init="random",
                      seed=1000 + t, max_iter=30)
        h = np.asarray(res.history)
        if h.size > 1:
            denom = np.where(h[:-1] != 0.0, np.abs(h[:-1]), 1.0)
            worst_rise = max(worst_rise, float((np.diff(h) / denom).max()))
    if worst_rise > 1e-9:
        failures.append("objective rose %.2e relative" % worst_rise)

    # one-dimensional center against a dense grid search
    rng = np.random.default_rng(11)
    worst_center = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 41))
        vals = rng.uniform(-5.0, 5.0, size=n)
        p = float(rng.uniform(1.05, 4.0))
        center = minkowski_center(vals, p)
        g = np.linspace(vals.min(), vals.max(), 20001)
        cost = (np.abs(vals[None, :] - g[:, None]) ** p).sum(axis=1)
        worst_center = max(worst_center, abs(center - float(g[cost.argmin()])))
    if worst_center > 1e-3:
        failures.append("center off grid optimum by %.2e" % worst_center)

    # adjusted Rand against the pair-counting reference
    rng = np.random.default_rng(12)
    worst_ari = 0.0
    for _ in range(50):
        n = int(rng.integers(10, 61))
        ka = int(rng.integers(2, 6))
        kb = int(rng.integers(2, 6))
        a = np.concatenate([np.arange(ka), rng.integers(0, ka, size=n - ka)])
        b = np.concatenate([np.arange(kb), rng.integers(0, kb, size=n - kb)])
        rng.shuffle(a)
        rng.shuffle(b)
        worst_ari = max(worst_ari,
                        abs(adjusted_rand_index(a, b) - _pair_counting_ari(a, b)))
    if worst_ari > 1e-12:
        failures.append("index deviates %.2e from pair counting" % worst_ari)
    if adjusted_rand_index([0, 0, 1, 1], [0, 1, 0, 1]) != -0.5:
        failures.append("crossed-pairs case is not exactly -0.5")

    # pigeonhole on the simplex: a below-average entry forces an
    # above-average one
    rng = np.random.default_rng(13)
    for _ in range(100):
        m = int(rng.integers(2, 13))
        row = rng.dirichlet(rng.uniform(0.2, 5.0, size=m))
        if row.min() < 1.0 / m and not row.max() > 1.0 / m:
            failures.append("pigeonhole violated at m=%d" % m)
            break

    _verdict(1, not failures,
             "unit properties (simplex, monotone objective, center oracle, "
             "pair-counting index, pigeonhole): "
             + ("all hold" if not failures else "; ".join(failures)))


def test_criterion_2_worked_example():
    ratios = np.full(12, 0.171)
    A = weight_denominator(ratios, 2.4)
    L = sensitivity_sum(ratios, 2.4)
    rep = selection_condition(SelectionConditionInputs(
        gamma=0.15, alpha=0.9, p=2.4, A=3.4, L=6.00, m=12))

    ok_A = abs(A - 3.4) <= 0.02 * 3.4
    ok_L = abs(L - 6.00) <= 0.02 * 6.00
    ok_value = abs(rep.value - 0.566) <= 1e-2
    ok_threshold = abs(rep.threshold - 0.5556) <= 1e-4
    ok = ok_A and ok_L and ok_value and ok_threshold and rep.satisfied

    _verdict(2, ok,
             "worked example: A=%.4f (target 3.4), L=%.4f (target 6.00), "
             "value=%.4f (target 0.566), threshold=%.4f (target 0.5556), "
             "satisfied=%s" % (A, L, rep.value, rep.threshold, rep.satisfied))


def test_criterion_3_clustering_trend(clustering_bench):
    parts = []
    ok = True
    for r in clustering_bench:
        ordered = r.mwkpp_best_mean > r.mwk_best_mean > r.kmeans_mean
        close = abs(r.mwkpp_best_mean - PUBLISHED_BEST_ARI[r.name]) <= 0.15
        ok = ok and ordered and close
        parts.append("%s: %.3f > %.3f > %.3f (target %.2f, ordered=%s, "
                     "within 0.15=%s)"
                     % (r.name, r.mwkpp_best_mean, r.mwk_best_mean,
                        r.kmeans_mean, PUBLISHED_BEST_ARI[r.name],
                        ordered, close))
    _verdict(3, ok, "clustering trend; " + " | ".join(parts))


def test_criterion_4_selection_recovery(selection_bench):
    parts = []
    ok = True
    for r in selection_bench:
        good = r.recovery_mean >= 0.95
        ok = ok and good
        parts.append("%s: mean recovery %.3f (>= 0.95: %s)"
                     % (r.name, r.recovery_mean, good))
    _verdict(4, ok, "feature recovery; " + " | ".join(parts))


def test_criterion_5_scalable_selection():
    spec = ConfigSpec(50000, 20, 5, 10, seed=50)
    ds = normalize_range(generate(spec))
    mask = ds.informative_mask
    r = int(mask.sum())

    n_sub = subsample_size(ds.n, 5)
    ok_size = n_sub == 1118 == round(5 * math.sqrt(50000))

    t0 = time.perf_counter()
    full = fs_mwkpp(ds.X, 5, r, p_grid=COARSE_P_GRID, seed=ACCEPT_SEED)
    full_wall = time.perf_counter() - t0
    full_rec = feature_recovery(full.selected, mask)

    recoveries = []
    walls = []
    for s in (0, 1, 2):
        t0 = time.perf_counter()
        sub = sfs_mwkpp(ds.X, 5, r, p_grid=COARSE_P_GRID, seed=s)
        walls.append(time.perf_counter() - t0)
        recoveries.append(feature_recovery(sub.selected, mask))

    ok_rec = all(v >= 0.90 for v in recoveries)
    ok_time = max(walls) < full_wall
    ok = ok_size and ok_rec and ok_time
    _verdict(5, ok,
             "scalable selection on 50000x30: subsample %d (expected 1118), "
             "recoveries %s (each >= 0.90: %s), slowest subsampled run "
             "%.1fs vs full %.1fs (faster=%s, full recovery %.2f)"
             % (n_sub, ["%.2f" % v for v in recoveries], ok_rec,
                max(walls), full_wall, ok_time, full_rec))


def test_criterion_6_noise_weight_audit(selection_bench):
    config_a = next(r for r in selection_bench
                    if r.name == "1000x10-5 +5NF")
    below = 0
    rows = 0
    entry_fracs = []
    for stack in config_a.weight_stacks:
        rep = audit_weight_stack(stack, config_a.informative_mask)
        below += rep.n_rows_all_noise_below
        rows += rep.n_rows
        entry_fracs.append(rep.noise_below_fraction)
    fraction = below / rows
    entry_fraction = float(np.concatenate(entry_fracs).mean())
    _verdict(6, fraction >= 0.95,
             "noise weights: %d of %d winning (exponent, cluster) rows give "
             "every noise feature weight < 1/m (fraction %.4f, need >= 0.95; "
             "per-row mean fraction of noise features below 1/m: %.4f)"
             % (below, rows, fraction, entry_fraction))


def test_criterion_7_entropy_scope():
    # The published real-world entropy comparison depends on external
    # baseline implementations and dataset preparations that are out of
    # scope here; the entropy metric itself is held to its property
    # contract instead.
    failures = []

    if clustering_entropy([0, 0, 1, 1], [1, 1, 0, 0]) != 0.0:
        failures.append("pure clusters not at zero entropy")

    expected = 0.6 * (-(2 / 3) * math.log2(2 / 3) - (1 / 3) * math.log2(1 / 3))
    got = clustering_entropy([0, 0, 1, 1, 1], [0, 0, 0, 1, 1])
    if abs(got - expected) > 1e-12:
        failures.append("hand-computed mixed case off by %.2e"
                        % abs(got - expected))

    rng = np.random.default_rng(14)
    for _ in range(50):
        n = int(rng.integers(4, 80))
        c = int(rng.integers(2, 6))
        true = rng.integers(0, c, size=n)
        pred = rng.integers(0, 5, size=n)
        h = clustering_entropy(true, pred)
        if not 0.0 <= h <= math.log2(c) + 1e-12:
            failures.append("entropy outside [0, log2(classes)]")
            break
        perm = rng.permutation(5)
        if abs(clustering_entropy(true, perm[pred]) - h) > 1e-12:
            failures.append("entropy not invariant under relabeling")
            break

    _verdict(7, not failures,
             "real-world entropy tables are out of scope (external baselines "
             "unavailable); entropy metric property checks "
             + ("all hold" if not failures else "; ".join(failures)))
