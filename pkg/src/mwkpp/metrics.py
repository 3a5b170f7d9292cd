"""External evaluation metrics for clusterings and feature selections."""

from __future__ import annotations

from math import comb

import numpy as np

from .errors import InputError


def _as_labels(labels, name: str) -> np.ndarray:
    arr = np.asarray(labels)
    if arr.ndim != 1 or arr.shape[0] == 0:
        raise InputError(f"{name} must be a non-empty 1-D label array")
    return arr


def contingency_table(labels_a, labels_b) -> np.ndarray:
    """Cross-tabulation of two labelings of the same items."""
    a = _as_labels(labels_a, "labels_a")
    b = _as_labels(labels_b, "labels_b")
    if a.shape[0] != b.shape[0]:
        raise InputError(
            f"labelings must have equal length, got {a.shape[0]} and {b.shape[0]}"
        )
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1), dtype=np.int64)
    np.add.at(table, (ai, bi), 1)
    return table


def _canonical(labels: np.ndarray) -> np.ndarray:
    _, inverse = np.unique(labels, return_inverse=True)
    first = {}
    out = np.empty(inverse.shape[0], dtype=np.int64)
    nxt = 0
    for i, v in enumerate(inverse):
        v = int(v)
        if v not in first:
            first[v] = nxt
            nxt += 1
        out[i] = first[v]
    return out


def adjusted_rand_index(labels_a, labels_b) -> float:
    """Adjusted Rand index between two labelings.

    Chance-corrected pair-counting agreement: 1 for identical partitions,
    around 0 for independent ones, negative when agreement falls below
    chance. When the correction denominator is zero (both partitions
    trivial in the same way), returns 1.0 if the partitions are identical
    and 0.0 otherwise.
    """
    table = contingency_table(labels_a, labels_b)
    n = int(table.sum())
    index = sum(comb(int(nij), 2) for nij in table.flat)
    sum_a = sum(comb(int(x), 2) for x in table.sum(axis=1))
    sum_b = sum(comb(int(x), 2) for x in table.sum(axis=0))
    # (index - E) / (M - E) scaled by 2*C(n,2) stays in exact integers
    pairs = comb(n, 2)
    numerator = 2 * pairs * index - 2 * sum_a * sum_b
    denominator = pairs * (sum_a + sum_b) - 2 * sum_a * sum_b
    if denominator == 0:
        same = np.array_equal(_canonical(np.asarray(labels_a)),
                              _canonical(np.asarray(labels_b)))
        return 1.0 if same else 0.0
    return numerator / denominator


def clustering_entropy(labels_true, labels_pred) -> float:
    """Size-weighted base-2 entropy of the true classes inside each
    predicted cluster. Zero iff every cluster is class-pure; lower is
    better."""
    table = contingency_table(labels_true, labels_pred)
    n = table.sum()
    total = 0.0
    for col in table.T:
        size = col.sum()
        if size == 0:
            continue
        q = col[col > 0] / size
        total += (size / n) * float(-(q * np.log2(q)).sum())
    return total


def feature_recovery(selected, informative) -> float:
    """Fraction of features handled correctly by a selection.

    ``selected`` lists the chosen feature indices, ``informative`` is a
    boolean mask of the truly informative features. The selection must
    pick exactly as many features as there are informative ones; the
    score counts informative features selected plus noise features
    excluded, divided by the total feature count.
    """
    informative = np.asarray(informative)
    if informative.ndim != 1 or informative.shape[0] == 0:
        raise InputError("informative must be a non-empty 1-D boolean mask")
    if informative.dtype != bool and not np.isin(informative, (0, 1)).all():
        raise InputError("informative must be a boolean mask of all "
                         "features, not a list of indices")
    informative = informative.astype(bool)
    m = informative.shape[0]
    sel = np.asarray(selected, dtype=np.int64).ravel()
    if np.unique(sel).shape[0] != sel.shape[0]:
        raise InputError("selected indices must be distinct")
    if sel.size and (sel.min() < 0 or sel.max() >= m):
        raise InputError(f"selected indices must lie in [0, {m})")
    r = int(informative.sum())
    if sel.shape[0] != r:
        raise InputError(
            f"selection size {sel.shape[0]} != informative count {r}"
        )
    mask = np.zeros(m, dtype=bool)
    mask[sel] = True
    correct = int((mask & informative).sum()) + int((~mask & ~informative).sum())
    return correct / m
