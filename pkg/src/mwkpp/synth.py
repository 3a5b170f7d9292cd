"""Synthetic benchmark generator: spherical Gaussian clusters of mixed
density plus appended uniform noise features.

Configurations are named "{n}x{m}-{k} +{q}NF": n points, m informative
features, k clusters, q noise features. Example: "1000x4-5 +2NF" is
1000 points over 4 informative features in 5 clusters with 2 noise
features appended, 6 features total.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

import numpy as np

from .dataio import Dataset
from .errors import InputError, ParseError
from .rng import derive_seed, rng_from

MIN_CLUSTER_SIZE = 20

_NAME_RE = re.compile(r"^\s*(\d+)x(\d+)-(\d+)\s*\+(\d+)NF\s*$")

# the twelve benchmark configurations, in table order
BENCH_CONFIG_NAMES = (
    "1000x4-3 +2NF",
    "1000x4-5 +2NF",
    "1000x4-10 +2NF",
    "1000x10-3 +5NF",
    "1000x10-5 +5NF",
    "1000x10-10 +5NF",
    "2000x20-5 +10NF",
    "2000x20-10 +10NF",
    "2000x20-20 +10NF",
    "2000x30-5 +15NF",
    "2000x30-10 +15NF",
    "2000x30-20 +15NF",
)


@dataclass(frozen=True)
class ConfigSpec:
    """One synthetic dataset configuration plus its generation seed."""

    n_points: int
    m_informative: int
    k_clusters: int
    n_noise: int
    seed: int = 0

    def __post_init__(self):
        if self.n_points < 1 or self.m_informative < 1 or self.k_clusters < 1:
            raise InputError(f"counts must be >= 1, got {self}")
        if self.n_noise < 0:
            raise InputError(f"n_noise must be >= 0, got {self.n_noise}")
        if self.n_points < MIN_CLUSTER_SIZE * self.k_clusters:
            raise InputError(
                f"n_points={self.n_points} cannot hold {self.k_clusters} "
                f"clusters of at least {MIN_CLUSTER_SIZE} points"
            )

    @property
    def name(self) -> str:
        return (f"{self.n_points}x{self.m_informative}-{self.k_clusters} "
                f"+{self.n_noise}NF")


def parse_config_name(name: str, seed: int = 0) -> ConfigSpec:
    """Parse a "{n}x{m}-{k} +{q}NF" configuration name."""
    match = _NAME_RE.match(name)
    if match is None:
        raise ParseError(
            f"configuration name {name!r} does not match '{{n}}x{{m}}-{{k}} +{{q}}NF'"
        )
    n, m, k, q = (int(g) for g in match.groups())
    return ConfigSpec(n_points=n, m_informative=m, k_clusters=k, n_noise=q,
                      seed=seed)


def _cluster_sizes(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """Uniformly random integer sizes summing to n with every part >= 20.

    Drawn uniformly over the compositions of the surplus n - 20k into k
    non-negative parts (bars-among-symbols construction), then shifted up
    by the minimum size.
    """
    if k == 1:
        return np.array([n])
    extra = n - MIN_CLUSTER_SIZE * k
    slots = extra + k - 1
    bars = np.sort(rng.choice(slots, size=k - 1, replace=False))
    parts = np.diff(np.concatenate(([-1], bars, [slots]))) - 1
    return parts + MIN_CLUSTER_SIZE


def generate(spec: ConfigSpec) -> Dataset:
    """Generate one synthetic dataset.

    Cluster centers are standard normal per coordinate, each cluster is
    spherical Gaussian with its own variance drawn from Uniform[0.5, 1.5],
    and sizes are uniformly random with a floor of 20 points. Noise
    features are i.i.d. Uniform over the full empirical range of the
    informative block, which keeps them non-trivial under any later
    rescaling. Rows are ordered by cluster; data is emitted raw
    (un-normalized). Same spec, same bytes.
    """
    rng = rng_from(spec.seed)
    n, m, k, q = (spec.n_points, spec.m_informative, spec.k_clusters,
                  spec.n_noise)

    centers = rng.normal(0.0, 1.0, size=(k, m))
    sigma2 = rng.uniform(0.5, 1.5, size=k)
    sizes = _cluster_sizes(n, k, rng)

    blocks = [
        rng.normal(centers[l], np.sqrt(sigma2[l]), size=(int(sizes[l]), m))
        for l in range(k)
    ]
    X_inf = np.vstack(blocks)
    labels = np.repeat(np.arange(k), sizes)

    if q > 0:
        lo = float(X_inf.min())
        hi = float(X_inf.max())
        noise = rng.uniform(lo, hi, size=(n, q))
        X = np.hstack([X_inf, noise])
    else:
        X = X_inf

    names = [f"f{j + 1}" for j in range(m)] + [f"nf{j + 1}" for j in range(q)]
    mask = np.concatenate([np.ones(m, dtype=bool), np.zeros(q, dtype=bool)])
    return Dataset(X=X, feature_names=names, labels=labels,
                   informative_mask=mask, name=spec.name, seed=spec.seed)


def benchmark_suite(datasets_per_config: int, base_seed: int = 0,
                    config_names=BENCH_CONFIG_NAMES):
    """All benchmark configurations with ``datasets_per_config`` datasets
    each, seeded deterministically per (configuration, replicate)."""
    if datasets_per_config < 1:
        raise InputError(
            f"datasets_per_config must be >= 1, got {datasets_per_config}"
        )
    suite = []
    for ci, name in enumerate(config_names):
        spec = parse_config_name(name)
        datasets = [
            generate(replace(spec, seed=derive_seed(base_seed, ci, di)))
            for di in range(datasets_per_config)
        ]
        suite.append((name, datasets))
    return suite
