"""Executable checks of the theory behind weight-stability feature
selection.

Everything here works on dispersion ratios a_u = D_lv / D_lu for one
feature v measured against all features u of the same cluster. From such
a ratio list the closed-form weight of v is 1 / weight_denominator, and
the sensitivity of that denominator to the exponent drives the stability
radius and the selection condition below. Natural logarithms throughout.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDataWarning, InputError
from .minkowski import check_exponent


def _check_ratios(ratios) -> np.ndarray:
    a = np.asarray(ratios, dtype=float)
    if a.ndim != 1 or a.shape[0] == 0:
        raise InputError("ratios must be a non-empty 1-D list")
    if not np.isfinite(a).all() or (a <= 0).any():
        raise InputError("ratios must be finite and strictly positive")
    return a


def weight_denominator(ratios, p: float) -> float:
    """sum_u a_u^(1/(p-1)) for a dispersion-ratio list.

    The closed-form weight of the feature the ratios describe is the
    reciprocal of this value, so small denominators mean heavy features.
    """
    p = check_exponent(p)
    a = _check_ratios(ratios)
    return float((a ** (1.0 / (p - 1.0))).sum())


def sensitivity_sum(ratios, p: float) -> float:
    """sum_u a_u^(1/(p-1)) * |ln a_u|: how fast the weight denominator
    moves as the exponent is perturbed. Zero iff every ratio is 1."""
    p = check_exponent(p)
    a = _check_ratios(ratios)
    return float((a ** (1.0 / (p - 1.0)) * np.abs(np.log(a))).sum())


def stability_radius(gamma: float, ratios, p: float) -> float:
    """Half-width of the exponent interval on which a weight margin of
    ``gamma`` above 1/m is preserved, under the local approximation:

        gamma * A^2 * (p - 1)^2 / L

    with A the weight denominator and L the sensitivity sum of the same
    ratios. Returns +inf when L is zero (all ratios 1: the weight does
    not respond to the exponent at all), which doubles as the degeneracy
    signal.
    """
    if not gamma > 0:
        raise InputError(f"gamma must be positive, got {gamma}")
    p = check_exponent(p)
    A = weight_denominator(ratios, p)
    L = sensitivity_sum(ratios, p)
    if L == 0.0:
        return float("inf")
    return gamma * A * A * (p - 1.0) ** 2 / L


@dataclass(frozen=True)
class SelectionConditionInputs:
    """Quantities entering the selection condition.

    gamma : weight margin above 1/m observed for informative features
    alpha : smallest cluster proportion, in (0, 1]
    p : exponent at which the engine was run
    A : weight denominator at p
    L : sensitivity sum at p
    m : total feature count
    """

    gamma: float
    alpha: float
    p: float
    A: float
    L: float
    m: int

    def __post_init__(self):
        if not self.gamma > 0:
            raise InputError(f"gamma must be positive, got {self.gamma}")
        if not 0 < self.alpha <= 1:
            raise InputError(f"alpha must be in (0, 1], got {self.alpha}")
        check_exponent(self.p)
        if not self.A > 0:
            raise InputError(f"A must be positive, got {self.A}")
        if self.L < 0:
            raise InputError(f"L must be non-negative, got {self.L}")
        if int(self.m) < 1:
            raise InputError(f"m must be a positive integer, got {self.m}")


@dataclass(frozen=True)
class ConditionReport:
    value: float
    threshold: float
    satisfied: bool


def selection_condition(inputs: SelectionConditionInputs) -> ConditionReport:
    """Evaluate the stability condition for reliable selection.

    value = gamma * A^2 * (p - 1)^2 / L must strictly exceed
    threshold = 1 / (2 * alpha). An L of zero yields value = +inf, which
    always satisfies the condition.
    """
    if inputs.L == 0.0:
        value = float("inf")
    else:
        value = inputs.gamma * inputs.A ** 2 * (inputs.p - 1.0) ** 2 / inputs.L
    threshold = 1.0 / (2.0 * inputs.alpha)
    return ConditionReport(value=value, threshold=threshold,
                           satisfied=value > threshold)


def denominator_limit_for_margin(m: int, gamma: float) -> float:
    """Largest weight denominator compatible with a weight of at least
    1/m + gamma: since w = 1/A, that is 1 / (1/m + gamma)."""
    if int(m) < 1:
        raise InputError(f"m must be a positive integer, got {m}")
    if not gamma > 0:
        raise InputError(f"gamma must be positive, got {gamma}")
    return 1.0 / (1.0 / m + gamma)


@dataclass
class NoiseCheck:
    """Per-cluster outcome of the mean-ratio noise test."""

    is_noise: np.ndarray
    degenerate: np.ndarray


def is_noise_feature(dispersions, v: int, relevant, p: float) -> NoiseCheck:
    """Mean-ratio noise test for feature ``v`` against a relevant set.

    For each cluster l the test asks whether the mean of
    (D_lv / D_lu)^(1/(p-1)) over relevant features u strictly exceeds 1.
    A zero dispersion among the relevant features makes the ratio
    infinite; such clusters are reported as noise with the degenerate
    flag set.
    """
    p = check_exponent(p)
    D = np.asarray(dispersions, dtype=float)
    if D.ndim != 2:
        raise InputError(f"dispersions must be 2-D, got shape {D.shape}")
    if not np.isfinite(D).all() or (D < 0).any():
        raise InputError("dispersions must be finite and non-negative")
    k, m = D.shape
    rel = np.asarray(sorted(set(int(u) for u in relevant)), dtype=np.int64)
    if rel.size == 0:
        raise InputError("relevant feature set must be non-empty")
    if rel.min() < 0 or rel.max() >= m:
        raise InputError(f"relevant indices must lie in [0, {m})")
    v = int(v)
    if not 0 <= v < m:
        raise InputError(f"v must lie in [0, {m}), got {v}")
    if v in rel:
        raise InputError(f"v={v} must not belong to the relevant set")

    e = 1.0 / (p - 1.0)
    is_noise = np.zeros(k, dtype=bool)
    degenerate = np.zeros(k, dtype=bool)
    for l in range(k):
        den = D[l, rel]
        if (den == 0.0).any():
            warnings.warn(
                f"zero dispersion among relevant features in cluster {l}",
                DegenerateDataWarning,
                stacklevel=2,
            )
            is_noise[l] = True
            degenerate[l] = True
            continue
        is_noise[l] = ((D[l, v] / den) ** e).mean() > 1.0
    return NoiseCheck(is_noise=is_noise, degenerate=degenerate)


@dataclass
class WeightStackReport:
    """Statistics of a pooled weight-row stack against a noise mask.

    One stack row is one (exponent, cluster) weight vector. For each row
    the report records the fraction of noise features weighted strictly
    below 1/m and whether some feature exceeds 1/m strictly; rows where
    every noise feature is below 1/m are counted in
    ``n_rows_all_noise_below``. ``feature_margin`` is each feature's
    maximum over rows of (weight - 1/m), the observed margin gamma_v.
    """

    noise_below_fraction: np.ndarray
    any_above: np.ndarray
    feature_margin: np.ndarray
    n_rows_all_noise_below: int
    rows_all_noise_below: float
    n_rows: int
    m: int

    def to_dict(self) -> dict:
        return {
            "n_rows": self.n_rows,
            "m": self.m,
            "rows_all_noise_below": self.rows_all_noise_below,
            "n_rows_all_noise_below": self.n_rows_all_noise_below,
            "mean_noise_below_fraction": float(self.noise_below_fraction.mean()),
            "all_rows_have_entry_above": bool(self.any_above.all()),
            "feature_margin": [float(g) for g in self.feature_margin],
        }


def audit_weight_stack(stack, informative_mask) -> WeightStackReport:
    """Audit a stack of fitted weight rows against a known noise mask.

    With no noise features the per-row noise statistics are vacuously 1.
    """
    W = np.asarray(stack, dtype=float)
    if W.ndim != 2 or W.shape[0] == 0:
        raise InputError(f"stack must be a non-empty 2-D array, got {W.shape}")
    mask = np.asarray(informative_mask, dtype=bool)
    if mask.shape != (W.shape[1],):
        raise InputError(
            f"mask length {mask.shape} does not match feature count {W.shape[1]}"
        )
    n_rows, m = W.shape
    thr = 1.0 / m
    noise = ~mask
    below = W < thr
    if noise.any():
        noise_below = below[:, noise]
        noise_below_fraction = noise_below.mean(axis=1)
        all_below = noise_below.all(axis=1)
    else:
        noise_below_fraction = np.ones(n_rows)
        all_below = np.ones(n_rows, dtype=bool)
    report = WeightStackReport(
        noise_below_fraction=noise_below_fraction,
        any_above=(W > thr).any(axis=1),
        feature_margin=(W - thr).max(axis=0),
        n_rows_all_noise_below=int(all_below.sum()),
        rows_all_noise_below=float(all_below.mean()),
        n_rows=n_rows,
        m=m,
    )
    return report
