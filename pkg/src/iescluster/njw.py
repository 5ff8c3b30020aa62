"""Spectral clustering pipeline: affinity -> normalized Laplacian -> top-k
eigenvector embedding with row normalization -> k-means on the embedding."""

from __future__ import annotations

import numpy as np

from .affinity import affinity_global, affinity_local, normalized_laplacian
from .errors import DegenerateEmbeddingError, InvalidParameterError
from .kmeans import KMeansResult, kmeans
from .linalg import as_matrix, symmetric_eigen
from .scaling import ScalingEstimate

# Row norms this far below the largest row are treated as numerically zero.
_ZERO_ROW_RTOL = 1e-12


def build_affinity(data, scaling: ScalingEstimate, distance_exponent: int = 2) -> np.ndarray:
    """Affinity matrix for either scaling kind."""
    if scaling.kind == "global":
        return affinity_global(data, scaling.sigma_sq, distance_exponent)
    if scaling.kind == "local":
        return affinity_local(data, scaling.local_sigmas, distance_exponent)
    raise InvalidParameterError(f"unknown scaling kind {scaling.kind!r}")


def row_normalize(vectors: np.ndarray) -> np.ndarray:
    """Scale each row to unit norm, rejecting numerically zero rows."""
    norms = np.sqrt(np.sum(vectors**2, axis=1))
    floor = _ZERO_ROW_RTOL * max(float(norms.max(initial=0.0)), 1e-300)
    bad = np.nonzero(norms <= floor)[0]
    if bad.size:
        raise DegenerateEmbeddingError(
            f"embedding rows {bad.tolist()} are numerically zero"
        )
    return vectors / norms[:, None]


def spectral_embed(laplacian, k: int) -> np.ndarray:
    """Top-k eigenvectors of the Laplacian with every row scaled to unit norm."""
    l = as_matrix(laplacian)
    n = l.shape[0]
    if not 1 <= k <= n:
        raise InvalidParameterError(f"k={k} out of range [1, {n}]")
    eig = symmetric_eigen(l)
    return row_normalize(eig.vectors[:, :k])


def cluster_embedding(
    laplacian, k: int, seed: int, max_iter: int = 300, tol: float = 1e-8
) -> KMeansResult:
    """Embed a prebuilt Laplacian and k-means the rows."""
    y = spectral_embed(laplacian, k)
    return kmeans(y, k, seed, max_iter=max_iter, tol=tol)


def njw_cluster(
    data,
    k: int,
    scaling: ScalingEstimate,
    seed: int,
    distance_exponent: int = 2,
    max_iter: int = 300,
    tol: float = 1e-8,
) -> np.ndarray:
    """Full pipeline on raw data; point i gets the cluster of embedding row i.

    Isolated-point and degenerate-embedding errors propagate to the caller.
    """
    a = build_affinity(data, scaling, distance_exponent)
    l = normalized_laplacian(a)
    return cluster_embedding(l, k, seed, max_iter=max_iter, tol=tol).assignments
