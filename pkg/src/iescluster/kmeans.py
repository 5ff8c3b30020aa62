"""Deterministic Lloyd-iteration k-means.

Initialization is greedy farthest-point: a seeded pseudo-random first
centroid, then each further centroid is the point farthest from the chosen
set (ties to the lowest index). A few such restarts (their first picks drawn
in sequence from the same seeded generator) are run and the lowest-SSE
result kept, so the outcome is a pure function of (data, k, seed). For a
fixed seed the candidate starting points are identical for every k, which
keeps elbow sweeps comparable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, InvalidParameterError
from .linalg import as_matrix


@dataclass(frozen=True)
class KMeansResult:
    """Final assignments and centroids plus convergence bookkeeping.

    ``sse_history`` records the objective after every assignment step of the
    winning run; it is non-increasing.
    """

    assignments: np.ndarray
    centroids: np.ndarray
    sse: float
    iterations: int
    converged: bool
    sse_history: tuple = field(default=(), repr=False)

    @property
    def n_clusters(self) -> int:
        return self.centroids.shape[0]


def sse(data, assignments, centroids) -> float:
    """Sum of squared Euclidean errors of points to their assigned centroids."""
    x = as_matrix(data)
    assign = np.asarray(assignments, dtype=int).ravel()
    c = as_matrix(centroids)
    if assign.shape[0] != x.shape[0]:
        raise DimensionError(
            f"assignments length {assign.shape[0]} != number of points {x.shape[0]}"
        )
    if c.shape[1] != x.shape[1]:
        raise DimensionError(
            f"centroid dimension {c.shape[1]} != data dimension {x.shape[1]}"
        )
    if assign.size and (assign.min() < 0 or assign.max() >= c.shape[0]):
        raise DimensionError("assignment id outside centroid range")
    diffs = x - c[assign]
    return float(np.sum(diffs**2))


def farthest_point_init(data, k: int, first_index: int) -> np.ndarray:
    """k starting centroids: the given first point, then greedy farthest."""
    x = as_matrix(data)
    chosen = [int(first_index)]
    min_sq = np.sum((x - x[chosen[0]]) ** 2, axis=1)
    while len(chosen) < k:
        nxt = int(np.argmax(min_sq))
        chosen.append(nxt)
        min_sq = np.minimum(min_sq, np.sum((x - x[nxt]) ** 2, axis=1))
    return x[chosen].copy()


def _nearest(x: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    # argmin resolves ties to the lowest centroid id.
    d2 = np.sum((x[:, None, :] - centroids[None, :, :]) ** 2, axis=2)
    return np.argmin(d2, axis=1)


def _lloyd(x: np.ndarray, centroids: np.ndarray, max_iter: int, tol: float) -> KMeansResult:
    history: list[float] = []
    iterations = 0
    converged = False
    while iterations < max_iter:
        iterations += 1
        assign = _nearest(x, centroids)
        history.append(sse(x, assign, centroids))
        if __debug__ and len(history) >= 2:
            assert history[-1] <= history[-2] * (1 + 1e-12) + 1e-12

        counts = np.bincount(assign, minlength=centroids.shape[0])
        keep = counts > 0
        means = np.empty_like(centroids)
        for cid in np.nonzero(keep)[0]:
            means[cid] = x[assign == cid].mean(axis=0)
        if not keep.all():
            # Dropping empty clusters changes the centroid count; keep going.
            centroids = means[keep]
            continue
        movement = float(np.max(np.sqrt(np.sum((means - centroids) ** 2, axis=1))))
        centroids = means
        if movement < tol:
            converged = True
            break

    assign = _nearest(x, centroids)
    history.append(sse(x, assign, centroids))
    counts = np.bincount(assign, minlength=centroids.shape[0])
    keep = np.nonzero(counts > 0)[0]
    remap = np.full(centroids.shape[0], -1, dtype=int)
    remap[keep] = np.arange(keep.size)
    assignments = remap[assign]
    centroids = centroids[keep]
    return KMeansResult(
        assignments=assignments,
        centroids=centroids,
        sse=sse(x, assignments, centroids),
        iterations=iterations,
        converged=converged,
        sse_history=tuple(history),
    )


def kmeans(
    data,
    k: int,
    seed: int,
    max_iter: int = 300,
    tol: float = 1e-8,
    init_centroids=None,
    n_restarts: int = 4,
) -> KMeansResult:
    """Lloyd iteration until centroid movement < tol or max_iter passes.

    Clusters that lose all members are dropped, so the effective number of
    clusters can shrink; final assignments are renumbered densely. The result
    is deterministic for fixed (data, k, seed). ``init_centroids`` overrides
    initialization with explicit starting centroids and disables restarts,
    e.g. to share starting points across runs.
    """
    x = as_matrix(data)
    n = x.shape[0]
    if k < 1:
        raise InvalidParameterError(f"k must be at least 1, got {k}")
    if k > n:
        raise InvalidParameterError(f"k={k} exceeds number of points n={n}")
    if n_restarts < 1:
        raise InvalidParameterError(f"n_restarts must be at least 1, got {n_restarts}")

    if init_centroids is not None:
        centroids = as_matrix(init_centroids).copy()
        if centroids.shape[1] != x.shape[1]:
            raise DimensionError("init_centroids dimension mismatch")
        return _lloyd(x, centroids, max_iter, tol)

    rng = np.random.default_rng(seed)
    best: KMeansResult | None = None
    for _ in range(n_restarts):
        start = int(rng.integers(n))
        result = _lloyd(x, farthest_point_init(x, k, start), max_iter, tol)
        if best is None or result.sse < best.sse:
            best = result
    return best
