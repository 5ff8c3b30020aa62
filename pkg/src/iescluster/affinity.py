"""Gaussian affinity matrices and the symmetric normalized Laplacian."""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, InvalidParameterError, IsolatedPointsError
from .linalg import as_matrix, pairwise_distances


def _distance_term(data, distance_exponent: int) -> np.ndarray:
    if distance_exponent not in (1, 2):
        raise InvalidParameterError(
            f"distance_exponent must be 1 or 2, got {distance_exponent}"
        )
    d = pairwise_distances(data)
    return d**2 if distance_exponent == 2 else d


def affinity_global(data, sigma_sq: float, distance_exponent: int = 2) -> np.ndarray:
    """Affinity A_ij = exp(-dist_ij^e / (2 sigma_sq)), zero diagonal.

    The exponent e defaults to squared Euclidean distance; e=1 keeps the
    plain norm for comparison runs.
    """
    if not sigma_sq > 0:
        raise InvalidParameterError(f"sigma_sq must be positive, got {sigma_sq}")
    term = _distance_term(data, distance_exponent)
    a = np.exp(-term / (2.0 * sigma_sq))
    np.fill_diagonal(a, 0.0)
    return a


def affinity_local(data, local_sigmas, distance_exponent: int = 2) -> np.ndarray:
    """Affinity A_ij = exp(-dist_ij^e / (sigma_i sigma_j)), zero diagonal.

    Pairs with sigma_i * sigma_j == 0 (duplicate points) get affinity 1 when
    coincident and 0 otherwise, the limit of the expression as the scale
    shrinks.
    """
    x = as_matrix(data)
    sig = np.asarray(local_sigmas, dtype=float).ravel()
    if sig.shape[0] != x.shape[0]:
        raise DimensionError(
            f"local_sigmas length {sig.shape[0]} != number of points {x.shape[0]}"
        )
    if np.any(sig < 0):
        raise InvalidParameterError("local sigmas must be nonnegative")
    term = _distance_term(x, distance_exponent)
    denom = np.outer(sig, sig)
    zero = denom == 0.0
    safe = np.where(zero, 1.0, denom)
    a = np.exp(-term / safe)
    if zero.any():
        a[zero] = np.where(term[zero] == 0.0, 1.0, 0.0)
    np.fill_diagonal(a, 0.0)
    return a


def normalized_laplacian(a) -> np.ndarray:
    """Symmetric normalization L = D^{-1/2} A D^{-1/2}, D the degree diagonal.

    Raises IsolatedPointsError (carrying the offending indices) when a row of
    the affinity sums to zero; the caller decides how to split those points
    off.
    """
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"affinity must be square, got {m.shape}")
    degrees = m.sum(axis=1)
    isolated = np.nonzero(degrees <= 0.0)[0]
    if isolated.size:
        raise IsolatedPointsError(isolated)
    inv_sqrt = 1.0 / np.sqrt(degrees)
    return m * np.outer(inv_sqrt, inv_sqrt)
