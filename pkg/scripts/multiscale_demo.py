#!/usr/bin/env python3
"""Demonstrate scale masking: a single global-scale eigengap round merges the
fine-scale pair of groups, while the iterative search and local scaling
recover all three.

Usage: python scripts/multiscale_demo.py [--seed 0] [--n-per-group 100]
"""

import argparse

from iescluster import (
    els_cluster,
    evaluate,
    ies_cluster,
    legacy_eigengap_cluster,
    nested_scale_dataset,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n-per-group", type=int, default=100)
    args = parser.parse_args()

    ds = nested_scale_dataset(n_per_group=args.n_per_group, seed=args.seed)
    print(
        f"dataset: {ds.n} points, {ds.m} features, 3 true groups "
        f"(coarse separation 100, fine separation 1, spread 0.1)\n"
    )

    runs = [
        ("legacy-eigengap", lambda: legacy_eigengap_cluster(ds.features, master_seed=0)),
        ("ies-global", lambda: ies_cluster(ds.features, "global", master_seed=0)),
        ("els", lambda: els_cluster(ds.features, master_seed=0)),
        ("ies-local", lambda: ies_cluster(ds.features, "local", master_seed=0)),
    ]
    print(f"{'method':<16}{'clusters':>9}{'accuracy':>10}{'F':>8}{'runtime':>10}")
    for name, fn in runs:
        outcome = fn()
        rep = evaluate(outcome.leaf_assignments, ds.labels, outcome.n_clusters)
        print(
            f"{name:<16}{outcome.n_clusters:>9}{rep.accuracy:>10.3f}"
            f"{rep.f_measure:>8.3f}{outcome.runtime_ms:>8.0f}ms"
        )
    print("\nthe one-round global baseline reports fewer clusters than the")
    print("three true groups; the iterated and local-scale methods split them.")


if __name__ == "__main__":
    main()
