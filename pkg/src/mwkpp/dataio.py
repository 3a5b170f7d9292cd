"""CSV dataset ingestion/emission and range normalization.

File format: UTF-8 CSV with a header row of feature names, optionally
containing a ``label`` column of integer class labels. An optional
second row marks informative features: its first cell is the literal
``#informative`` followed by one 0/1 per feature (label column
excluded). Numbers are written with 17 significant digits so values
round-trip exactly.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DegenerateDataWarning, InputError, ParseError

MASK_MARKER = "#informative"
LABEL_COLUMN = "label"


@dataclass
class Dataset:
    """A numeric data matrix with optional labels and noise mask."""

    X: np.ndarray
    feature_names: list = field(default_factory=list)
    labels: np.ndarray | None = None
    informative_mask: np.ndarray | None = None
    name: str | None = None
    seed: int | None = None

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=float)
        if self.X.ndim != 2:
            raise InputError(f"X must be 2-D, got shape {self.X.shape}")
        n, m = self.X.shape
        if not self.feature_names:
            self.feature_names = [f"f{j + 1}" for j in range(m)]
        if len(self.feature_names) != m:
            raise InputError(
                f"{len(self.feature_names)} feature names for {m} columns"
            )
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.int64)
            if self.labels.shape != (n,):
                raise InputError(f"labels must have shape ({n},)")
        if self.informative_mask is not None:
            self.informative_mask = np.asarray(self.informative_mask, dtype=bool)
            if self.informative_mask.shape != (m,):
                raise InputError(f"informative mask must have shape ({m},)")

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def m(self) -> int:
        return self.X.shape[1]


def _parse_float(cell: str, row: int, col: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(
            f"non-numeric cell {cell!r} at row {row}, column {col}"
        ) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite cell {cell!r} at row {row}, column {col}")
    return value


def _parse_label(cell: str, row: int, col: int) -> int:
    value = _parse_float(cell, row, col)
    if value != int(value):
        raise ParseError(
            f"non-integer label {cell!r} at row {row}, column {col}"
        )
    return int(value)


def load_csv(path, label_column: str | None = LABEL_COLUMN,
             mask_row: bool | None = None) -> Dataset:
    """Load a dataset from CSV.

    Parameters
    ----------
    path : file path
    label_column : column name holding integer labels, or None to treat
        every column as a feature. The default recognizes ``label`` if
        present.
    mask_row : require (True), forbid (False), or auto-detect (None) the
        ``#informative`` row.

    Row/column coordinates in parse errors are 1-based file coordinates,
    header included.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r]  # tolerate trailing blank lines
    if not rows:
        raise ParseError(f"{path}: empty file")

    header = [c.strip() for c in rows[0]]
    if label_column is not None and label_column in header:
        label_idx = header.index(label_column)
    else:
        if label_column is not None and label_column != LABEL_COLUMN:
            raise ParseError(f"{path}: no column named {label_column!r}")
        label_idx = None
    names = [h for j, h in enumerate(header) if j != label_idx]
    m = len(names)
    if m == 0:
        raise ParseError(f"{path}: no feature columns")

    body_start = 1
    mask = None
    if len(rows) > 1 and rows[1] and rows[1][0].strip() == MASK_MARKER:
        if mask_row is False:
            raise ParseError(f"{path}: unexpected {MASK_MARKER} row")
        cells = [c.strip() for c in rows[1][1:]]
        if len(cells) != m:
            raise ParseError(
                f"{path}: {MASK_MARKER} row has {len(cells)} flags, "
                f"expected {m}"
            )
        flags = []
        for j, c in enumerate(cells):
            if c not in ("0", "1"):
                raise ParseError(
                    f"{path}: {MASK_MARKER} flag must be 0 or 1, got {c!r} "
                    f"at row 2, column {j + 2}"
                )
            flags.append(c == "1")
        mask = np.array(flags, dtype=bool)
        body_start = 2
    elif mask_row is True:
        raise ParseError(f"{path}: required {MASK_MARKER} row is missing")

    data = rows[body_start:]
    if not data:
        raise ParseError(f"{path}: no data rows")
    X = np.empty((len(data), m))
    labels = np.empty(len(data), dtype=np.int64) if label_idx is not None else None
    for i, row in enumerate(data):
        file_row = body_start + i + 1
        if len(row) != len(header):
            raise ParseError(
                f"{path}: row {file_row} has {len(row)} cells, "
                f"expected {len(header)}"
            )
        jj = 0
        for j, cell in enumerate(row):
            if j == label_idx:
                labels[i] = _parse_label(cell.strip(), file_row, j + 1)
            else:
                X[i, jj] = _parse_float(cell.strip(), file_row, j + 1)
                jj += 1
    return Dataset(X=X, feature_names=names, labels=labels,
                   informative_mask=mask)


def write_csv(dataset: Dataset, path) -> None:
    """Write a dataset in the format :func:`load_csv` reads back."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        header = list(dataset.feature_names)
        if dataset.labels is not None:
            header.append(LABEL_COLUMN)
        writer.writerow(header)
        if dataset.informative_mask is not None:
            writer.writerow(
                [MASK_MARKER] + ["1" if b else "0" for b in dataset.informative_mask]
            )
        for i in range(dataset.n):
            row = [f"{v:.17g}" for v in dataset.X[i]]
            if dataset.labels is not None:
                row.append(str(int(dataset.labels[i])))
            writer.writerow(row)


def normalize_range(dataset: Dataset) -> Dataset:
    """Center each feature and divide by its range.

    After normalization every retained feature has mean 0 and range
    exactly 1. Constant features carry no range information and are
    dropped with a warning naming them; a dataset consisting only of
    constant features is an error.
    """
    X = dataset.X
    lo = X.min(axis=0)
    hi = X.max(axis=0)
    keep = hi > lo
    if not keep.any():
        raise InputError("every feature is constant; nothing to normalize")
    if not keep.all():
        dropped = [dataset.feature_names[j] for j in np.flatnonzero(~keep)]
        warnings.warn(
            f"dropping constant features: {', '.join(dropped)}",
            DegenerateDataWarning,
            stacklevel=2,
        )
    Xk = X[:, keep]
    Xn = (Xk - Xk.mean(axis=0)) / (hi[keep] - lo[keep])
    return replace(
        dataset,
        X=Xn,
        feature_names=[n for n, b in zip(dataset.feature_names, keep) if b],
        informative_mask=None if dataset.informative_mask is None
        else dataset.informative_mask[keep],
    )
