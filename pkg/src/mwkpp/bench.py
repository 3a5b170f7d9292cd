"""Benchmark protocols comparing the engines and selectors on the
synthetic suite.

Clustering comparison: per dataset, every algorithm runs ``n_runs``
times and its score is the mean adjusted Rand index over those runs;
per configuration the scores are averaged over datasets. The weighted
engine is run once per exponent as the baseline arm (plain k-means++
seeding, plain dispersion-ratio weight update) and once as the
relevance-aware arm (dispersion-guided seeding, mean-shifted weight
update), reported both averaged over the grid and at the best grid
value (the hindsight config-level argmax). Selection comparison: the
full-data selector runs once per dataset with r set to the number of
informative features and is scored by feature recovery.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .dataio import normalize_range
from .engine import kmeans_fit, mwk_fit, mwkpp_global_weights
from .errors import InputError
from .metrics import adjusted_rand_index, feature_recovery
from .rng import derive_seed
from .selection import COARSE_P_GRID, fs_mwkpp
from .synth import BENCH_CONFIG_NAMES, generate, parse_config_name

_ALG_KMEANS, _ALG_MWK, _ALG_MWKPP, _ALG_FS = range(4)


@dataclass
class ClusteringBenchResult:
    """Per-configuration summary of the clustering comparison."""

    name: str
    n_datasets: int
    n_runs: int
    p_grid: tuple
    kmeans_mean: float
    kmeans_std: float
    mwk_all_mean: float
    mwk_all_std: float
    mwk_best_mean: float
    mwk_best_std: float
    mwk_best_p: float
    mwkpp_all_mean: float
    mwkpp_all_std: float
    mwkpp_best_mean: float
    mwkpp_best_std: float
    mwkpp_best_p: float
    ari_kmeans: np.ndarray = field(repr=False, default=None)
    ari_mwk: np.ndarray = field(repr=False, default=None)
    ari_mwkpp: np.ndarray = field(repr=False, default=None)

    def to_dict(self) -> dict:
        return {
            "config": self.name,
            "n_datasets": self.n_datasets,
            "n_runs": self.n_runs,
            "p_grid": list(self.p_grid),
            "kmeanspp": {"mean": self.kmeans_mean, "std": self.kmeans_std},
            "mwk": {
                "all_p": {"mean": self.mwk_all_mean, "std": self.mwk_all_std},
                "best_p": {"mean": self.mwk_best_mean, "std": self.mwk_best_std,
                           "p": self.mwk_best_p},
            },
            "mwkpp": {
                "all_p": {"mean": self.mwkpp_all_mean, "std": self.mwkpp_all_std},
                "best_p": {"mean": self.mwkpp_best_mean,
                           "std": self.mwkpp_best_std, "p": self.mwkpp_best_p},
            },
        }


@dataclass
class SelectionBenchResult:
    """Per-configuration summary of the feature-recovery comparison."""

    name: str
    n_datasets: int
    n_restarts: int
    p_grid: tuple
    r: int
    recovery_mean: float
    recovery_std: float
    recoveries: np.ndarray = field(repr=False, default=None)
    weight_stacks: list = field(repr=False, default_factory=list)
    informative_mask: np.ndarray = field(repr=False, default=None)

    def to_dict(self) -> dict:
        return {
            "config": self.name,
            "n_datasets": self.n_datasets,
            "n_restarts": self.n_restarts,
            "p_grid": list(self.p_grid),
            "r": self.r,
            "recovery": {"mean": self.recovery_mean, "std": self.recovery_std,
                         "per_dataset": [float(v) for v in self.recoveries]},
        }


def _config_datasets(name: str, ci: int, datasets_per_config: int, seed: int):
    spec = parse_config_name(name)
    for di in range(datasets_per_config):
        raw = generate(replace(spec, seed=derive_seed(seed, ci, di)))
        ds = normalize_range(raw)
        yield di, spec, ds


def run_clustering_bench(config_names=BENCH_CONFIG_NAMES, *,
                         datasets_per_config: int = 10, n_runs: int = 25,
                         p_grid=COARSE_P_GRID, seed: int = 0,
                         mode: str = "fast", max_iter: int = 100):
    """Run the clustering comparison on the given configurations.

    Returns one :class:`ClusteringBenchResult` per configuration. Fully
    deterministic in ``seed``; each (config, dataset, algorithm,
    exponent, run) tuple gets an independent derived seed.
    """
    if datasets_per_config < 1 or n_runs < 1:
        raise InputError("datasets_per_config and n_runs must be >= 1")
    p_grid = tuple(p_grid)
    results = []
    for ci, name in enumerate(config_names):
        ari_km = np.empty(datasets_per_config)
        ari_mwk = np.empty((datasets_per_config, len(p_grid)))
        ari_mwkpp = np.empty((datasets_per_config, len(p_grid)))
        for di, spec, ds in _config_datasets(name, ci, datasets_per_config, seed):
            k = spec.k_clusters
            runs = np.empty(n_runs)
            for t in range(n_runs):
                res = kmeans_fit(ds.X, k, max_iter=max_iter,
                                 seed=derive_seed(seed, ci, di, _ALG_KMEANS, 0, t))
                runs[t] = adjusted_rand_index(ds.labels, res.labels)
            ari_km[di] = runs.mean()
            for ip, p in enumerate(p_grid):
                for t in range(n_runs):
                    res = mwk_fit(ds.X, k, p, mode=mode, init="kmeanspp",
                                  max_iter=max_iter, regularize_weights=False,
                                  seed=derive_seed(seed, ci, di, _ALG_MWK, ip, t))
                    runs[t] = adjusted_rand_index(ds.labels, res.labels)
                ari_mwk[di, ip] = runs.mean()
                global_w = mwkpp_global_weights(ds.X, p)
                for t in range(n_runs):
                    res = mwk_fit(ds.X, k, p, mode=mode, init="mwkpp",
                                  max_iter=max_iter, global_weights=global_w,
                                  seed=derive_seed(seed, ci, di, _ALG_MWKPP, ip, t))
                    runs[t] = adjusted_rand_index(ds.labels, res.labels)
                ari_mwkpp[di, ip] = runs.mean()

        mwk_by_p = ari_mwk.mean(axis=0)
        mwkpp_by_p = ari_mwkpp.mean(axis=0)
        jb_mwk = int(np.argmax(mwk_by_p))
        jb_mwkpp = int(np.argmax(mwkpp_by_p))
        results.append(ClusteringBenchResult(
            name=name, n_datasets=datasets_per_config, n_runs=n_runs,
            p_grid=p_grid,
            kmeans_mean=float(ari_km.mean()), kmeans_std=float(ari_km.std()),
            mwk_all_mean=float(ari_mwk.mean()),
            mwk_all_std=float(ari_mwk.mean(axis=1).std()),
            mwk_best_mean=float(mwk_by_p[jb_mwk]),
            mwk_best_std=float(ari_mwk[:, jb_mwk].std()),
            mwk_best_p=float(p_grid[jb_mwk]),
            mwkpp_all_mean=float(ari_mwkpp.mean()),
            mwkpp_all_std=float(ari_mwkpp.mean(axis=1).std()),
            mwkpp_best_mean=float(mwkpp_by_p[jb_mwkpp]),
            mwkpp_best_std=float(ari_mwkpp[:, jb_mwkpp].std()),
            mwkpp_best_p=float(p_grid[jb_mwkpp]),
            ari_kmeans=ari_km, ari_mwk=ari_mwk, ari_mwkpp=ari_mwkpp,
        ))
    return results


def run_selection_bench(config_names, *, datasets_per_config: int = 10,
                        n_restarts: int = 25, p_grid=COARSE_P_GRID,
                        seed: int = 0, mode: str = "fast",
                        max_iter: int = 100):
    """Run the feature-recovery comparison on the given configurations.

    Keeps every dataset's pooled weight stack so the run can be audited
    afterwards.
    """
    if datasets_per_config < 1:
        raise InputError("datasets_per_config must be >= 1")
    p_grid = tuple(p_grid)
    results = []
    for ci, name in enumerate(config_names):
        recoveries = np.empty(datasets_per_config)
        stacks = []
        mask = None
        r = None
        for di, spec, ds in _config_datasets(name, ci, datasets_per_config, seed):
            mask = ds.informative_mask
            r = int(mask.sum())
            sel = fs_mwkpp(ds.X, spec.k_clusters, r, p_grid=p_grid,
                           n_restarts=n_restarts, mode=mode, max_iter=max_iter,
                           seed=derive_seed(seed, ci, di, _ALG_FS))
            recoveries[di] = feature_recovery(sel.selected, mask)
            stacks.append(sel.weight_stack)
        results.append(SelectionBenchResult(
            name=name, n_datasets=datasets_per_config, n_restarts=n_restarts,
            p_grid=p_grid, r=r,
            recovery_mean=float(recoveries.mean()),
            recovery_std=float(recoveries.std()),
            recoveries=recoveries, weight_stacks=stacks,
            informative_mask=mask,
        ))
    return results


def _cell(mean: float, std: float) -> str:
    return f"{mean:.2f}+-{std:.2f}"


def format_clustering_table(results) -> str:
    """Fixed-width comparison table, one row per configuration."""
    headers = ["config", "kmeans++", "MWK(all p)", "MWK(best p)",
               "MWK++(all p)", "MWK++(best p)", "best p"]
    rows = []
    for r in results:
        rows.append([
            r.name,
            _cell(r.kmeans_mean, r.kmeans_std),
            _cell(r.mwk_all_mean, r.mwk_all_std),
            _cell(r.mwk_best_mean, r.mwk_best_std),
            _cell(r.mwkpp_all_mean, r.mwkpp_all_std),
            _cell(r.mwkpp_best_mean, r.mwkpp_best_std),
            f"{r.mwkpp_best_p:.3g}",
        ])
    return _format_rows(headers, rows)


def format_selection_table(results) -> str:
    headers = ["config", "r", "recovery"]
    rows = [[r.name, str(r.r), _cell(r.recovery_mean, r.recovery_std)]
            for r in results]
    return _format_rows(headers, rows)


def _format_rows(headers, rows) -> str:
    widths = [max(len(h), *(len(row[j]) for row in rows)) if rows else len(h)
              for j, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)
