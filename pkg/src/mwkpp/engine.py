"""Clustering engines: weighted Minkowski k-means, its relevance-aware
initializer, and a plain k-means baseline.

The weighted engine minimizes

    sum_l sum_{i in S_l} sum_v (w_lv * |x_iv - z_lv|)^p

over partitions S, centroids Z, and per-cluster feature weights W, with
each weight row on the simplex. Weight updates add the row mean to every
dispersion before applying the closed-form update, which shields the
weights against near-zero dispersions at the price of not being the exact
row minimizer. In ``mode="exact"`` the fit therefore keeps the previous
centroid cell or weight row whenever a candidate would raise the
objective, which makes the recorded objective history non-increasing.
``mode="fast"`` applies the median/mean centroid heuristic with no such
guard.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDataWarning, InputError
from .minkowski import check_exponent, minkowski_center_columns
from .rng import derive_seed


@dataclass
class MWKResult:
    """Outcome of a single weighted Minkowski k-means run."""

    labels: np.ndarray
    centroids: np.ndarray
    weights: np.ndarray
    objective: float
    history: list[float] = field(default_factory=list)
    n_iter: int = 0
    converged: bool = False
    empty_repairs: int = 0


@dataclass
class KMeansResult:
    """Outcome of a single Lloyd k-means run."""

    labels: np.ndarray
    centroids: np.ndarray
    objective: float
    n_iter: int = 0
    converged: bool = False
    empty_repairs: int = 0


def _check_data(X, k: int) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0 or X.shape[1] == 0:
        raise InputError(f"data must be a non-empty 2-D array, got shape {X.shape}")
    if not np.isfinite(X).all():
        raise InputError("data contains non-finite values")
    if not 1 <= int(k) <= X.shape[0]:
        raise InputError(f"k must be in [1, n={X.shape[0]}], got {k}")
    return X


def weights_from_dispersions(D, p: float, regularize: bool = True) -> np.ndarray:
    """Closed-form feature weights from a per-cluster dispersion matrix.

    For each row, w_v = 1 / sum_u (D_v / D_u)^(1/(p-1)), computed in log
    space so extreme dispersion ratios cannot overflow. With
    ``regularize=True`` (the default used by the engine) the row mean is
    added to every entry first. A row that is entirely zero gets uniform
    weights and emits :class:`DegenerateDataWarning`. Without the
    regularizer, zero-dispersion features split the row's weight equally
    among themselves, which is the limit of the formula.

    Parameters
    ----------
    D : array, shape (k, m) or (m,)
        Non-negative dispersions; a 1-D input is treated as one row.
    p : float
        Minkowski exponent, > 1.

    Returns
    -------
    ndarray with the input's shape; every row sums to 1.
    """
    p = check_exponent(p)
    D = np.asarray(D, dtype=float)
    squeeze = D.ndim == 1
    D = np.atleast_2d(D)
    if D.ndim != 2:
        raise InputError(f"dispersions must be 1-D or 2-D, got shape {D.shape}")
    if not np.isfinite(D).all() or (D < 0).any():
        raise InputError("dispersions must be finite and non-negative")

    k, m = D.shape
    e = 1.0 / (p - 1.0)
    W = np.empty_like(D)
    for l in range(k):
        row = D[l]
        if regularize:
            row = row + row.mean()
        zero = row == 0.0
        if zero.all():
            warnings.warn(
                f"all-zero dispersion row {l}: falling back to uniform weights",
                DegenerateDataWarning,
                stacklevel=2,
            )
            W[l] = 1.0 / m
        elif zero.any():
            W[l] = zero / zero.sum()
        else:
            g = -e * np.log(row)
            g -= g.max()
            wl = np.exp(g)
            W[l] = wl / wl.sum()
    return W[0] if squeeze else W


def mwk_assign(X, Z, W, p: float) -> np.ndarray:
    """Assign each row of ``X`` to the cluster with the smallest weighted
    Minkowski distance in p-th power form. Ties go to the lowest index."""
    return _cost_matrix(np.asarray(X, float), np.asarray(Z, float),
                        np.asarray(W, float), check_exponent(p)).argmin(axis=1)


def _cost_matrix(X, Z, W, p) -> np.ndarray:
    n, m = X.shape
    k = Z.shape[0]
    C = np.empty((n, k))
    buf = np.empty((n, m))
    for l in range(k):
        np.subtract(X, Z[l], out=buf)
        np.abs(buf, out=buf)
        buf *= W[l]
        np.power(buf, p, out=buf)
        buf.sum(axis=1, out=C[:, l])
    return C


def cluster_dispersions(X, labels, Z, p: float, k: int | None = None) -> np.ndarray:
    """Per-cluster, per-feature dispersions sum_{i in S_l} |x_iv - z_lv|^p.

    Empty clusters get all-zero rows.
    """
    p = check_exponent(p)
    X = np.asarray(X, dtype=float)
    Z = np.asarray(Z, dtype=float)
    labels = np.asarray(labels)
    if k is None:
        k = Z.shape[0]
    D = np.zeros((k, X.shape[1]))
    for l in range(k):
        rows = X[labels == l]
        if rows.shape[0]:
            D[l] = (np.abs(rows - Z[l]) ** p).sum(axis=0)
    return D


def mwk_objective(X, labels, Z, W, p: float) -> float:
    """Weighted Minkowski k-means objective for an explicit configuration."""
    D = cluster_dispersions(X, labels, Z, p)
    return float((np.asarray(W, float) ** p * D).sum())


def _repair_empty(C, labels, counts, Z, X) -> int:
    """Re-seed every empty cluster at the point farthest from its own
    centroid, never draining a cluster below one member. Mutates
    ``labels``, ``counts`` and ``Z`` in place; returns the repair count."""
    empties = np.flatnonzero(counts == 0)
    if not empties.size:
        return 0
    point_cost = C[np.arange(labels.shape[0]), labels]
    order = np.argsort(-point_cost)
    pos = 0
    repaired = 0
    for l in empties:
        while pos < order.size and counts[labels[order[pos]]] <= 1:
            pos += 1
        if pos >= order.size:
            break
        i = order[pos]
        pos += 1
        counts[labels[i]] -= 1
        labels[i] = l
        counts[l] = 1
        Z[l] = X[i]
        repaired += 1
    return repaired


def _dispersion_to(rows, c, p) -> np.ndarray:
    buf = np.abs(rows - c)
    np.power(buf, p, out=buf)
    return buf.sum(axis=0)


def _centroids_and_dispersions(X, labels, Z_old, k, p, mode):
    """One centroid update plus the dispersions around the new centroids.

    Exact mode keeps the old centroid coordinate wherever the candidate
    has a larger dispersion, so dispersions never increase cell-wise.
    """
    Z = Z_old.copy()
    D = np.zeros((k, X.shape[1]))
    for l in range(k):
        rows = X[labels == l]
        if rows.shape[0] == 0:
            continue
        if mode == "fast":
            c = np.median(rows, axis=0) if p < 1.5 else rows.mean(axis=0)
            Z[l] = c
            D[l] = _dispersion_to(rows, c, p)
        else:
            cand = minkowski_center_columns(rows, p)
            d_new = _dispersion_to(rows, cand, p)
            d_old = _dispersion_to(rows, Z_old[l], p)
            better = d_new <= d_old
            Z[l] = np.where(better, cand, Z_old[l])
            D[l] = np.where(better, d_new, d_old)
    return Z, D


def mwk_random_init(X, k: int, rng: np.random.Generator):
    """Random initializer: k distinct data rows and uniform weights."""
    X = np.asarray(X, dtype=float)
    idx = rng.choice(X.shape[0], size=k, replace=False)
    Z = X[idx].copy()
    W = np.full((k, X.shape[1]), 1.0 / X.shape[1])
    return Z, W


def mwkpp_global_weights(X, p: float) -> np.ndarray:
    """Dataset-level feature weights used by the relevance-aware seeding.

    Dispersions of every feature around the exact Minkowski center of the
    whole dataset, regularized by their mean, then pushed through the
    closed-form weight update. Deterministic, so callers running many
    restarts on one dataset can compute this once and pass it to
    :func:`mwkpp_init`.
    """
    p = check_exponent(p)
    X = _check_data(X, 1)
    center = minkowski_center_columns(X, p)
    disp = (np.abs(X - center) ** p).sum(axis=0)
    return weights_from_dispersions(disp, p)


def mwkpp_init(X, k: int, p: float, rng: np.random.Generator,
               global_weights: np.ndarray | None = None):
    """Relevance-aware seeding for the weighted Minkowski engine.

    The first centroid is a uniformly chosen data row. Every later
    centroid is a data row sampled with probability proportional to its
    weighted Minkowski distance (p-th power form, not squared again) to
    the nearest centroid chosen so far, where the weights are the
    dataset-level profile from :func:`mwkpp_global_weights`. Returns
    ``(centroids, weights)`` with that profile replicated to all k rows.
    """
    p = check_exponent(p)
    X = _check_data(X, k)
    n, m = X.shape
    w = mwkpp_global_weights(X, p) if global_weights is None \
        else np.asarray(global_weights, dtype=float)
    if w.shape != (m,):
        raise InputError(f"global weights must have shape ({m},), got {w.shape}")

    Z = np.empty((k, m))
    Z[0] = X[int(rng.integers(n))]
    d = ((np.abs(X - Z[0]) * w) ** p).sum(axis=1)
    for j in range(1, k):
        s = d.sum()
        if s > 0.0:
            i = int(rng.choice(n, p=d / s))
        else:
            warnings.warn(
                "all points coincide with a chosen centroid: sampling uniformly",
                DegenerateDataWarning,
                stacklevel=2,
            )
            i = int(rng.integers(n))
        Z[j] = X[i]
        d = np.minimum(d, ((np.abs(X - Z[j]) * w) ** p).sum(axis=1))
    return Z, np.tile(w, (k, 1))


def mwk_fit(X, k: int, p: float, *, mode: str = "fast", init: str = "mwkpp",
            seed: int | None = None, max_iter: int = 100,
            regularize_weights: bool = True,
            init_centroids=None, init_weights=None,
            global_weights: np.ndarray | None = None) -> MWKResult:
    """Run weighted Minkowski k-means to convergence.

    Parameters
    ----------
    X : array, shape (n, m)
    k : int
        Number of clusters, 1 <= k <= n.
    p : float
        Minkowski exponent, > 1.
    mode : {"fast", "exact"}
        "fast" updates centroids with the component-wise median (p < 1.5)
        or mean (p >= 1.5). "exact" uses golden-section Minkowski centers
        and the monotonicity guards described in the module docstring.
    init : {"mwkpp", "kmeanspp", "random"}
        Initializer: relevance-aware sampling, classical k-means++ seeding
        with uniform weights, or uniformly drawn data rows with uniform
        weights. Ignored when ``init_centroids`` is given.
    seed : int or None
        Seed for the initializer's random draws.
    regularize_weights : bool
        When True (default) every within-cluster dispersion row is
        shifted by its own mean before the weight update, damping the
        winner-take-all drift that plain dispersion ratios produce on
        near-zero dispersions. False runs the plain ratio update; the
        relevance-aware initializer keeps the shift either way.
    init_centroids, init_weights : arrays, optional
        Explicit starting configuration; weights default to uniform.
    global_weights : array, optional
        Precomputed :func:`mwkpp_global_weights` profile (restart caching).

    Returns
    -------
    MWKResult
        ``history`` holds the objective after every full iteration.
    """
    X = _check_data(X, k)
    p = check_exponent(p)
    if mode not in ("fast", "exact"):
        raise InputError(f"mode must be 'fast' or 'exact', got {mode!r}")
    if max_iter < 1:
        raise InputError(f"max_iter must be >= 1, got {max_iter}")
    n, m = X.shape

    if init_centroids is not None:
        Z = np.asarray(init_centroids, dtype=float).copy()
        if Z.shape != (k, m):
            raise InputError(f"init_centroids must have shape ({k}, {m})")
        if init_weights is None:
            W = np.full((k, m), 1.0 / m)
        else:
            W = np.asarray(init_weights, dtype=float).copy()
            if W.shape != (k, m):
                raise InputError(f"init_weights must have shape ({k}, {m})")
    else:
        rng = np.random.default_rng(seed)
        if init == "mwkpp":
            Z, W = mwkpp_init(X, k, p, rng, global_weights=global_weights)
        elif init == "kmeanspp":
            Z = kmeanspp_seed(X, k, rng)
            W = np.full((k, m), 1.0 / m)
        elif init == "random":
            Z, W = mwk_random_init(X, k, rng)
        else:
            raise InputError(
                f"init must be 'mwkpp', 'kmeanspp' or 'random', got {init!r}")

    labels = None
    history: list[float] = []
    repairs = 0
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        C = _cost_matrix(X, Z, W, p)
        new_labels = C.argmin(axis=1)
        counts = np.bincount(new_labels, minlength=k)
        repairs += _repair_empty(C, new_labels, counts, Z, X)
        if labels is not None and np.array_equal(new_labels, labels):
            converged = True
            break
        labels = new_labels
        Z, D = _centroids_and_dispersions(X, labels, Z, k, p, mode)
        W_cand = weights_from_dispersions(D, p, regularize=regularize_weights)
        if mode == "exact":
            worse = (W_cand ** p * D).sum(axis=1) > (W ** p * D).sum(axis=1)
            W = np.where(worse[:, None], W, W_cand)
        else:
            W = W_cand
        history.append(float((W ** p * D).sum()))

    return MWKResult(labels=labels, centroids=Z, weights=W,
                     objective=history[-1], history=history,
                     n_iter=it, converged=converged, empty_repairs=repairs)


def restart_best(X, k: int, p: float, *, restarts: int = 25,
                 base_seed: int = 0, mode: str = "fast",
                 max_iter: int = 100) -> MWKResult:
    """Best-objective relevance-seeded fit over independent restarts.

    Restart r uses the seed derived from (base_seed, r); the global
    weight profile is computed once and shared. Ties keep the lowest
    restart index. Deterministic in base_seed regardless of execution
    order.
    """
    if restarts < 1:
        raise InputError(f"restarts must be >= 1, got {restarts}")
    X = _check_data(X, k)
    p = check_exponent(p)
    global_w = mwkpp_global_weights(X, p)
    best = None
    for r in range(restarts):
        res = mwk_fit(X, k, p, mode=mode, init="mwkpp",
                      seed=derive_seed(base_seed, r), max_iter=max_iter,
                      global_weights=global_w)
        if best is None or res.objective < best.objective:
            best = res
    return best


def kmeanspp_seed(X, k: int, rng: np.random.Generator) -> np.ndarray:
    """Classical k-means++ seeding: first centroid uniform, each later one
    a data row sampled proportionally to its squared Euclidean distance to
    the nearest centroid chosen so far."""
    X = _check_data(X, k)
    n = X.shape[0]
    Z = np.empty((k, X.shape[1]))
    Z[0] = X[int(rng.integers(n))]
    d2 = ((X - Z[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        s = d2.sum()
        if s > 0.0:
            i = int(rng.choice(n, p=d2 / s))
        else:
            i = int(rng.integers(n))
        Z[j] = X[i]
        d2 = np.minimum(d2, ((X - Z[j]) ** 2).sum(axis=1))
    return Z


def kmeans_fit(X, k: int, *, seed: int | None = None, max_iter: int = 100,
               init_centroids=None) -> KMeansResult:
    """Lloyd k-means with k-means++ seeding (squared Euclidean objective).

    Serves as the unweighted baseline; empty clusters are repaired the
    same way as in :func:`mwk_fit`.
    """
    X = _check_data(X, k)
    if max_iter < 1:
        raise InputError(f"max_iter must be >= 1, got {max_iter}")
    n, m = X.shape
    if init_centroids is not None:
        Z = np.asarray(init_centroids, dtype=float).copy()
        if Z.shape != (k, m):
            raise InputError(f"init_centroids must have shape ({k}, {m})")
    else:
        Z = kmeanspp_seed(X, k, np.random.default_rng(seed))

    labels = None
    objective = np.inf
    repairs = 0
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        C = np.empty((n, k))
        for l in range(k):
            C[:, l] = ((X - Z[l]) ** 2).sum(axis=1)
        new_labels = C.argmin(axis=1)
        counts = np.bincount(new_labels, minlength=k)
        repairs += _repair_empty(C, new_labels, counts, Z, X)
        if labels is not None and np.array_equal(new_labels, labels):
            converged = True
            break
        labels = new_labels
        objective = 0.0
        for l in range(k):
            rows = X[labels == l]
            if rows.shape[0]:
                Z[l] = rows.mean(axis=0)
                objective += float(((rows - Z[l]) ** 2).sum())

    return KMeansResult(labels=labels, centroids=Z, objective=objective,
                        n_iter=it, converged=converged, empty_repairs=repairs)
