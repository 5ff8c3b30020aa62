#!/usr/bin/env python3
"""Run the full method comparison on the yeast cell-cycle benchmark
(384 genes x 17 time points, 5 phase labels).

The file is not redistributable with this package; download the 384-gene
five-phase subset (see README for the recipe), store it as CSV with 17
feature columns plus a "label" column, and pass it here:

    python scripts/cell_cycle.py --input data/cell_cycle.csv
"""

import argparse

from iescluster import (
    els_cluster,
    evaluate,
    ies_cluster,
    legacy_eigengap_cluster,
    load_dataset,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", required=True)
    parser.add_argument("--label-col", default="label")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    ds = load_dataset(args.input, label_column=args.label_col)
    print(f"dataset: {ds.n} observations, {ds.m} features")

    runs = [
        ("ies-global", lambda: ies_cluster(ds.features, "global", master_seed=args.seed)),
        ("els", lambda: els_cluster(ds.features, master_seed=args.seed)),
        ("ies-local", lambda: ies_cluster(ds.features, "local", master_seed=args.seed)),
        ("legacy-eigengap", lambda: legacy_eigengap_cluster(ds.features, master_seed=args.seed)),
    ]
    print(f"{'method':<16}{'K':>5}{'accuracy':>10}{'precision':>11}{'recall':>8}{'F':>8}{'time':>9}")
    for name, fn in runs:
        outcome = fn()
        rep = evaluate(outcome.leaf_assignments, ds.labels, outcome.n_clusters)
        print(
            f"{name:<16}{outcome.n_clusters:>5}{rep.accuracy:>10.3f}"
            f"{rep.precision:>11.3f}{rep.recall:>8.3f}{rep.f_measure:>8.3f}"
            f"{outcome.runtime_ms:>7.0f}ms"
        )


if __name__ == "__main__":
    main()
