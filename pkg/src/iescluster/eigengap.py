"""Cluster-count estimation from the Laplacian spectrum via the eigengap."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, InvalidDataError, InvalidParameterError


@dataclass(frozen=True)
class EigengapEstimate:
    """Estimated cluster count plus the gap vector it came from."""

    k: int
    gaps: np.ndarray
    search_limit: int


def eigengap_k(eigenvalues, search_fraction: float = 0.5) -> EigengapEstimate:
    """Largest absolute gap between consecutive eigenvalues, searched within
    the first ``search_fraction`` of the spectrum.

    For a descending spectrum the gap at position i (1-based) is
    |lambda_i - lambda_{i+1}| and the estimate is the argmax position over
    i <= max(1, floor(search_fraction * n)); ties go to the smallest i, so
    equal gaps favor fewer clusters.
    """
    if not 0.0 < search_fraction <= 1.0:
        raise InvalidParameterError(
            f"search_fraction must be in (0, 1], got {search_fraction}"
        )
    ev = np.asarray(eigenvalues, dtype=float).ravel()
    n = ev.shape[0]
    if n < 2:
        raise InsufficientDataError(f"eigengap needs at least 2 eigenvalues, got {n}")
    if not np.all(np.isfinite(ev)):
        raise InvalidDataError("eigenvalues contain NaN or Inf")
    if np.any(np.diff(ev) > 1e-12):
        raise InvalidDataError("eigenvalues must be sorted in descending order")
    gaps = np.abs(np.diff(ev))
    limit = max(1, int(np.floor(search_fraction * n)))
    limit = min(limit, n - 1)
    k = int(np.argmax(gaps[:limit])) + 1
    return EigengapEstimate(k=k, gaps=gaps, search_limit=limit)
