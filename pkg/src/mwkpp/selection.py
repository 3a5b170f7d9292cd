"""Weight-stability feature selection built on the weighted Minkowski
engine.

Both selectors exploit the same observation: across exponents, restarts,
and clusters, the engine keeps assigning low weight to noise features,
so the median of a feature's weight over a large pool of fitted weight
rows is a robust relevance score.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .dataio import Dataset
from .engine import _check_data, restart_best
from .errors import DegenerateDataWarning, InputError
from .minkowski import check_exponent
from .rng import derive_seed, rng_from

FINE_P_GRID = tuple(float(v) for v in np.round(np.linspace(1.1, 3.0, 20), 10))
COARSE_P_GRID = tuple(float(v) for v in np.round(np.linspace(1.1, 3.0, 10), 10))


@dataclass
class WeightStackEntry:
    """Winning weight matrix of one (exponent, subsample) work item."""

    p: float
    weights: np.ndarray
    objective: float
    sample_id: int = 0


@dataclass
class FeatureSelectionResult:
    """Outcome of a weight-stability feature selection.

    ``weight_stack`` holds every pooled weight row (one per exponent and
    cluster, and per subsample iteration for the scalable variant);
    ``scores`` is its column-wise median, ``order`` ranks all features by
    descending score (ties toward the lower index), and ``selected``
    holds the top-scoring feature indices in ascending order.
    """

    selected: np.ndarray
    scores: np.ndarray
    order: np.ndarray
    weight_stack: np.ndarray
    p_grid: tuple
    subsample_size: int | None = None


def _ranking(scores: np.ndarray) -> np.ndarray:
    # descending score, ties broken toward the lower feature index
    return np.lexsort((np.arange(scores.shape[0]), -scores))


def _top_r(scores: np.ndarray, r: int) -> np.ndarray:
    return np.sort(_ranking(scores)[:r])


def _check_r(r: int, m: int) -> int:
    if not 1 <= int(r) <= m:
        raise InputError(f"r must be in [1, m={m}], got {r}")
    return int(r)


def _check_grid(p_grid) -> tuple:
    grid = tuple(check_exponent(p) for p in p_grid)
    if len(grid) == 0:
        raise InputError("p_grid must be non-empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InputError("p_grid must be strictly increasing")
    return grid


def collect_weights(X, k: int, p_grid, *, n_restarts: int = 25,
                    base_seed: int = 0, mode: str = "fast",
                    max_iter: int = 100,
                    sample_id: int = 0) -> list[WeightStackEntry]:
    """Best-objective weight matrix for every exponent in the grid.

    Each exponent runs ``n_restarts`` independently seeded relevance-
    initialized fits and keeps the winner's weights and objective.
    """
    X = _check_data(X, k)
    p_grid = _check_grid(p_grid)
    if n_restarts < 1:
        raise InputError(f"n_restarts must be >= 1, got {n_restarts}")
    entries = []
    for ip, p in enumerate(p_grid):
        best = restart_best(X, k, p, restarts=n_restarts,
                            base_seed=derive_seed(base_seed, ip),
                            mode=mode, max_iter=max_iter)
        entries.append(WeightStackEntry(p=p, weights=best.weights,
                                        objective=best.objective,
                                        sample_id=sample_id))
    return entries


def median_aggregate(stack) -> np.ndarray:
    """Per-feature median over every stored weight row.

    Accepts a list of :class:`WeightStackEntry` or an already stacked
    2-D row pool. The median pools the flattened (entry, cluster)
    multiset; an even count takes the midpoint of the central pair.
    """
    if isinstance(stack, np.ndarray):
        rows = stack
    else:
        if len(stack) == 0:
            raise InputError("weight stack must be non-empty")
        rows = np.vstack([e.weights for e in stack])
    if rows.ndim != 2 or rows.shape[0] == 0:
        raise InputError("weight stack must be a non-empty 2-D row pool")
    return np.median(rows, axis=0)


def _result(entries: list[WeightStackEntry], r: int, p_grid: tuple,
            n_subsample: int | None = None) -> FeatureSelectionResult:
    weight_stack = np.vstack([e.weights for e in entries])
    scores = np.median(weight_stack, axis=0)
    order = _ranking(scores)
    return FeatureSelectionResult(selected=np.sort(order[:r]), scores=scores,
                                  order=order, weight_stack=weight_stack,
                                  p_grid=p_grid, subsample_size=n_subsample)


def fs_mwkpp(X, k: int, r: int, *, p_grid=FINE_P_GRID, n_restarts: int = 25,
             seed: int = 0, mode: str = "fast",
             max_iter: int = 100) -> FeatureSelectionResult:
    """Select ``r`` features by pooled weight stability.

    For every exponent in ``p_grid`` the engine is run ``n_restarts``
    times with relevance-aware seeding and the weight matrix of the
    best-objective run is kept. All kept rows are pooled and each
    feature is scored by its median pooled weight; the ``r`` top-scoring
    features win, ties going to the lower index.
    """
    X = _check_data(X, k)
    r = _check_r(r, X.shape[1])
    entries = collect_weights(X, k, p_grid, n_restarts=n_restarts,
                              base_seed=seed, mode=mode, max_iter=max_iter)
    return _result(entries, r, tuple(float(p) for p in p_grid))


def subsample_size(n: int, k: int) -> int:
    """Subsample size for the scalable selector: round(k * sqrt(n)),
    clamped to [k, n]."""
    if n < 1 or k < 1:
        raise InputError(f"n and k must be positive, got n={n}, k={k}")
    return min(int(n), max(int(k), round(k * math.sqrt(n))))


def subsample(ds: Dataset, size: int, rng: np.random.Generator) -> Dataset:
    """Uniform row subsample without replacement, metadata preserved.

    A size above n is clamped to n with a warning; labels follow the
    sampled rows, feature names and the informative mask are unchanged.
    """
    if size < 1:
        raise InputError(f"subsample size must be >= 1, got {size}")
    n = ds.n
    if size > n:
        warnings.warn(f"subsample size {size} clamped to n={n}",
                      DegenerateDataWarning, stacklevel=2)
        size = n
    rows = rng.choice(n, size=size, replace=False)
    labels = ds.labels[rows] if ds.labels is not None else None
    return replace(ds, X=ds.X[rows], labels=labels)


def sfs_mwkpp(X, k: int, r: int, *, p_grid=COARSE_P_GRID,
              n_iterations: int = 25, n_restarts: int = 25, seed: int = 0,
              mode: str = "fast", max_iter: int = 100,
              n_subsample: int | None = None) -> FeatureSelectionResult:
    """Scalable variant of :func:`fs_mwkpp` for large datasets.

    Each of ``n_iterations`` rounds draws a fresh subsample of size
    round(k * sqrt(n)) without replacement and collects best-of-
    ``n_restarts`` weights per exponent on it. Every winning row enters
    the pool; scoring and the top-``r`` rule are identical to the full
    selector.
    """
    X = _check_data(X, k)
    n, m = X.shape
    r = _check_r(r, m)
    p_grid = _check_grid(p_grid)
    if n_iterations < 1:
        raise InputError(f"n_iterations must be >= 1, got {n_iterations}")
    n_s = subsample_size(n, k) if n_subsample is None else int(n_subsample)
    if not k <= n_s <= n:
        raise InputError(f"n_subsample must be in [k={k}, n={n}], got {n_s}")

    entries = []
    for t in range(n_iterations):
        rng = rng_from(derive_seed(seed, t))
        sub = X[rng.choice(n, size=n_s, replace=False)]
        entries.extend(collect_weights(sub, k, p_grid, n_restarts=n_restarts,
                                       base_seed=derive_seed(seed, t),
                                       mode=mode, max_iter=max_iter,
                                       sample_id=t))
    return _result(entries, r, p_grid, n_subsample=n_s)
