"""Minkowski-metric primitives: weighted power distances, per-feature
dispersions, and per-coordinate Minkowski centers.

All distances are used in their p-th power form (no p-th root anywhere):
that is the quantity the clustering objective sums, and comparisons are
unaffected by the monotone root.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def check_exponent(p: float) -> float:
    """Validate the Minkowski exponent (strictly greater than 1)."""
    p = float(p)
    if not np.isfinite(p) or p <= 1.0:
        raise InputError(f"Minkowski exponent must satisfy p > 1, got {p}")
    return p


def default_center_tol(values: np.ndarray) -> float:
    """Scale-relative stopping width for the exact center search."""
    lo = float(np.min(values))
    hi = float(np.max(values))
    return 1e-6 * (hi - lo + 1.0)


def weighted_minkowski_distance(x, z, w, p: float) -> float:
    """Weighted Minkowski distance in p-th power form.

    Returns sum_v w_v^p * |x_v - z_v|^p for feature vectors ``x`` and
    ``z`` with per-feature weights ``w``.
    """
    p = check_exponent(p)
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    if not (x.shape == z.shape == w.shape) or x.ndim != 1:
        raise InputError(
            f"x, z, w must be 1-D vectors of equal length, got shapes "
            f"{x.shape}, {z.shape}, {w.shape}"
        )
    if not (np.isfinite(x).all() and np.isfinite(z).all() and np.isfinite(w).all()):
        raise InputError("non-finite input to weighted_minkowski_distance")
    return float(np.sum((w * np.abs(x - z)) ** p))


def minkowski_center(values, p: float, tol: float | None = None) -> float:
    """Exact Minkowski center: the c minimizing sum_i |v_i - c|^p.

    The objective is strictly convex for p > 1, so the minimizer is unique
    and lies in [min(values), max(values)]. Found by golden-section search;
    the returned point is within ``tol`` of the true minimizer.
    """
    p = check_exponent(p)
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise InputError("minkowski_center requires a non-empty value list")
    if not np.isfinite(v).all():
        raise InputError("non-finite input to minkowski_center")
    if tol is None:
        tol = default_center_tol(v)
    if tol <= 0:
        raise InputError(f"tol must be positive, got {tol}")

    a = float(v.min())
    b = float(v.max())
    if b - a <= tol:
        return (a + b) / 2.0

    def f(c: float) -> float:
        return float(np.sum(np.abs(v - c) ** p))

    c1 = b - _GOLDEN * (b - a)
    c2 = a + _GOLDEN * (b - a)
    f1, f2 = f(c1), f(c2)
    while b - a > tol:
        if f1 <= f2:
            b, c2, f2 = c2, c1, f1
            c1 = b - _GOLDEN * (b - a)
            f1 = f(c1)
        else:
            a, c1, f1 = c1, c2, f2
            c2 = a + _GOLDEN * (b - a)
            f2 = f(c2)
    return (a + b) / 2.0


def minkowski_center_columns(
    values: np.ndarray, p: float, tol: np.ndarray | float | None = None
) -> np.ndarray:
    """Exact Minkowski center of every column of an (n, m) matrix.

    Vectorized golden-section search: one objective evaluation per
    iteration covers all columns, so the cost is O(iterations * n * m).
    Agrees with :func:`minkowski_center` column by column.
    """
    p = check_exponent(p)
    v = np.asarray(values, dtype=float)
    if v.ndim != 2 or v.shape[0] == 0:
        raise InputError("minkowski_center_columns requires a non-empty (n, m) matrix")

    a = v.min(axis=0)
    b = v.max(axis=0)
    if tol is None:
        tol = 1e-6 * (b - a + 1.0)
    tol = np.broadcast_to(np.asarray(tol, dtype=float), a.shape).copy()

    def f(c: np.ndarray) -> np.ndarray:
        return (np.abs(v - c[None, :]) ** p).sum(axis=0)

    c1 = b - _GOLDEN * (b - a)
    c2 = a + _GOLDEN * (b - a)
    f1, f2 = f(c1), f(c2)
    while True:
        open_cols = (b - a) > tol
        if not open_cols.any():
            break
        left = f1 <= f2
        # shrink to [a, c2] where the left probe wins, [c1, b] elsewhere
        b = np.where(left, c2, b)
        a = np.where(left, a, c1)
        c_old1, c_old2 = c1, c2
        f_old1, f_old2 = f1, f2
        c1 = np.where(left, b - _GOLDEN * (b - a), c_old2)
        c2 = np.where(left, c_old1, a + _GOLDEN * (b - a))
        fresh = np.where(left, c1, c2)
        f_fresh = f(fresh)
        f1 = np.where(left, f_fresh, f_old2)
        f2 = np.where(left, f_old1, f_fresh)
    return (a + b) / 2.0


def minkowski_center_fast(values, p: float) -> float:
    """Fast approximate center: component-wise median when p < 1.5,
    arithmetic mean otherwise (the boundary p = 1.5 uses the mean)."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise InputError("minkowski_center_fast requires a non-empty value list")
    if not np.isfinite(v).all():
        raise InputError("non-finite input to minkowski_center_fast")
    if float(p) < 1.5:
        return float(np.median(v))
    return float(np.mean(v))


def feature_dispersion(values, center: float, p: float) -> float:
    """Dispersion of a value list around a center: sum_i |v_i - c|^p.

    An empty list has zero dispersion (empty-cluster convention).
    """
    p = check_exponent(p)
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return 0.0
    if not (np.isfinite(v).all() and np.isfinite(center)):
        raise InputError("non-finite input to feature_dispersion")
    return float(np.sum(np.abs(v - float(center)) ** p))
