"""Shared builders for the test suite."""

from itertools import permutations

import numpy as np
import pytest


def ideal_block_affinity(sizes):
    """Ones within blocks, zeros across, zero diagonal."""
    n = sum(sizes)
    a = np.zeros((n, n))
    start = 0
    for b in sizes:
        a[start : start + b, start : start + b] = 1.0
        start += b
    np.fill_diagonal(a, 0.0)
    return a


def block_labels(sizes):
    return np.concatenate([np.full(b, i) for i, b in enumerate(sizes)])


def separated_blobs(sizes, separation=100.0, spread=0.05, dims=3, seed=0):
    """Well-separated Gaussian groups, one per coordinate axis so that all
    pairwise center distances are equal, plus labels."""
    dims = max(dims, len(sizes))
    rng = np.random.default_rng(seed)
    blocks = []
    for i, b in enumerate(sizes):
        center = np.zeros(dims)
        center[i] = separation
        blocks.append(center + rng.normal(0, spread, (b, dims)))
    return np.vstack(blocks), block_labels(sizes)


def best_permutation_accuracy(assignments, labels):
    """Agreement between two labelings, maximized over cluster-to-label
    permutations. Only for small numbers of distinct values."""
    assign_ids = np.unique(assignments)
    label_ids = np.unique(labels)
    n = len(assignments)
    best = 0.0
    for perm in permutations(label_ids, len(assign_ids)):
        mapping = dict(zip(assign_ids, perm))
        mapped = np.array([mapping[a] for a in assignments])
        best = max(best, float(np.mean(mapped == np.asarray(labels))))
    return best


def partition_of(assignments):
    """A labeling as a canonical set of frozen index sets."""
    a = np.asarray(assignments)
    return {frozenset(np.nonzero(a == v)[0].tolist()) for v in np.unique(a)}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
