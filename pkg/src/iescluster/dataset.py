"""CSV dataset ingestion: observations in rows, features in columns, with an
optional ground-truth label column."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDataError


@dataclass(frozen=True)
class Dataset:
    """A feature matrix with optional per-row labels, row order preserved."""

    features: np.ndarray
    labels: np.ndarray | None = None
    feature_names: tuple[str, ...] | None = None
    label_name: str | None = None

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def m(self) -> int:
        return self.features.shape[1]


def _coerce_labels(raw: list[str]) -> np.ndarray:
    """Keep labels as ints when every value parses as one, else as strings."""
    try:
        return np.array([int(v) for v in raw])
    except ValueError:
        return np.array(raw, dtype=object)


def load_dataset(path, label_column=None, has_header: bool = False) -> Dataset:
    """Parse a rectangular numeric CSV, splitting off an optional label column.

    ``label_column`` may be a 0-based column index or, with a header, a column
    name (a name implies ``has_header``). Ragged rows and non-numeric or
    non-finite feature cells raise errors naming the offending line.
    """
    label_by_name = isinstance(label_column, str) and not _is_int(label_column)
    if label_by_name:
        has_header = True

    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh)]
    rows = [row for row in rows if row and any(cell.strip() for cell in row)]
    if not rows:
        raise InvalidDataError(f"{path}: empty file")

    header = None
    start_line = 1
    if has_header:
        header = [cell.strip() for cell in rows[0]]
        rows = rows[1:]
        start_line = 2
        if not rows:
            raise InvalidDataError(f"{path}: no data rows after header")

    width = len(rows[0])
    for offset, row in enumerate(rows):
        if len(row) != width:
            raise InvalidDataError(
                f"{path}: line {start_line + offset}: expected {width} columns, got {len(row)}"
            )

    label_idx = None
    if label_column is not None:
        if label_by_name:
            if header is None or label_column not in header:
                raise InvalidDataError(f"{path}: no column named {label_column!r}")
            label_idx = header.index(label_column)
        else:
            label_idx = int(label_column)
            if not -width <= label_idx < width:
                raise InvalidDataError(
                    f"{path}: label column index {label_idx} out of range for {width} columns"
                )
            label_idx %= width

    feature_cols = [j for j in range(width) if j != label_idx]
    if not feature_cols:
        raise InvalidDataError(f"{path}: no feature columns left after label split")

    features = np.empty((len(rows), len(feature_cols)))
    raw_labels: list[str] = []
    for i, row in enumerate(rows):
        for out_j, j in enumerate(feature_cols):
            cell = row[j].strip()
            try:
                value = float(cell)
            except ValueError:
                value = math.nan
            if not math.isfinite(value):
                raise InvalidDataError(
                    f"{path}: line {start_line + i}, column {j + 1}: "
                    f"non-numeric value {cell!r}"
                )
            features[i, out_j] = value
        if label_idx is not None:
            raw_labels.append(row[label_idx].strip())

    labels = _coerce_labels(raw_labels) if label_idx is not None else None
    names = (
        tuple(header[j] for j in feature_cols) if header is not None else None
    )
    label_name = header[label_idx] if (header is not None and label_idx is not None) else None
    return Dataset(features=features, labels=labels, feature_names=names, label_name=label_name)


def _is_int(text: str) -> bool:
    try:
        int(text)
        return True
    except ValueError:
        return False


def save_dataset(dataset: Dataset, path) -> None:
    """Write features (and the label column, when present) as CSV with header."""
    names = dataset.feature_names or tuple(f"f{j}" for j in range(dataset.m))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = list(names) + ([dataset.label_name or "label"] if dataset.labels is not None else [])
        writer.writerow(header)
        for i in range(dataset.n):
            row = [repr(float(v)) for v in dataset.features[i]]
            if dataset.labels is not None:
                row.append(str(dataset.labels[i]))
            writer.writerow(row)
