"""Feature table loading and preparation.

A Dataset is an immutable table of real-valued feature vectors with optional
per-row class labels.  Instances are identified by row position (0..n-1);
preparation steps (dedupe, normalize) return new Dataset objects, and dedupe
reassigns ids contiguously over the surviving rows.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


class DataError(Exception):
    """An input file or feature table is unusable."""


@dataclass(frozen=True)
class Dataset:
    features: np.ndarray
    labels: Optional[tuple] = None

    def __post_init__(self):
        x = np.ascontiguousarray(np.asarray(self.features, dtype=np.float64))
        if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] < 1:
            raise DataError("features must be a non-empty 2-d table")
        if not np.all(np.isfinite(x)):
            raise DataError("features must be finite real numbers")
        object.__setattr__(self, "features", x)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != x.shape[0]:
                raise DataError(
                    f"got {len(labels)} labels for {x.shape[0]} instances"
                )
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def ids(self) -> range:
        return range(self.n)


def load_csv(path: str, label_column: Optional[str] = None, delimiter: str = ",") -> Dataset:
    """Read a headered CSV into a Dataset.

    Every column except the named label column must parse as a finite float.
    Errors identify the offending cell by 1-based data row (header excluded)
    and 1-based column position.
    """
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise DataError(f"cannot open {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh, delimiter=delimiter)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path} is empty") from None
        header = [h.strip() for h in header]
        label_idx = None
        if label_column is not None:
            if label_column not in header:
                raise DataError(
                    f"label column {label_column!r} not in header {header}"
                )
            label_idx = header.index(label_column)
        rows = []
        labels = [] if label_idx is not None else None
        for row_no, row in enumerate(reader, start=1):
            if len(row) != len(header):
                raise DataError(
                    f"row {row_no}: expected {len(header)} cells, got {len(row)}"
                )
            feats = []
            for col_no, cell in enumerate(row, start=1):
                if label_idx is not None and col_no - 1 == label_idx:
                    labels.append(cell.strip())
                    continue
                try:
                    value = float(cell)
                except ValueError:
                    raise DataError(
                        f"row {row_no}, column {col_no}: {cell!r} is not a number"
                    ) from None
                if not np.isfinite(value):
                    raise DataError(
                        f"row {row_no}, column {col_no}: {cell!r} is not finite"
                    )
                feats.append(value)
            rows.append(feats)
        if not rows:
            raise DataError(f"{path} has a header but no data rows")
    return Dataset(np.asarray(rows, dtype=np.float64), labels)


def dedupe(data: Dataset) -> Dataset:
    """Drop exact duplicate feature vectors, keeping first occurrences in order."""
    seen = set()
    keep = []
    for i in range(data.n):
        key = tuple(data.features[i])
        if key not in seen:
            seen.add(key)
            keep.append(i)
    labels = None if data.labels is None else tuple(data.labels[i] for i in keep)
    return Dataset(data.features[keep], labels)


def normalize(data: Dataset) -> Dataset:
    """Rescale each feature to [0, 1]; constant features become all zeros."""
    x = data.features
    lo = x.min(axis=0)
    span = x.max(axis=0) - lo
    out = np.zeros_like(x)
    active = span > 0
    out[:, active] = (x[:, active] - lo[active]) / span[active]
    return Dataset(out, data.labels)


def distance(x: Sequence[float], y: Sequence[float]) -> float:
    """Euclidean distance between two feature vectors of equal length."""
    a = np.asarray(x, dtype=np.float64)
    b = np.asarray(y, dtype=np.float64)
    if a.shape != b.shape:
        raise DataError(f"vector length mismatch: {a.shape} vs {b.shape}")
    return float(np.sqrt(((a - b) ** 2).sum()))
