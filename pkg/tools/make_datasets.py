"""Regenerate the bundled CSV datasets in data/.

Run from the repository root:

    python3 tools/make_datasets.py

iris.csv restores the two rows the original UCI file got wrong (0-based rows
34 and 37, both 4.9,3.1,1.5,0.1 there); sklearn ships the corrected values,
and the published duplicate counts assume the uncorrected file.

digits389.csv is the 3/8/9 slice of sklearn's bundled 8x8 digits. blobs1200
is synthetic (fixed-seed Gaussian blobs) and exists for scale testing.
"""

import csv
import os

import numpy as np
from sklearn.datasets import load_digits, load_iris, load_wine

OUT_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")

# values from the UCI iris.data file, indexed by 0-based row
UCI_IRIS_ROWS = {
    34: (4.9, 3.1, 1.5, 0.1),
    37: (4.9, 3.1, 1.5, 0.1),
}


def write_csv(name, header, rows):
    path = os.path.join(OUT_DIR, name)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def fmt(value):
    # shortest exact decimal, so regeneration is byte-stable
    return np.format_float_positional(float(value), trim="0")


def make_iris():
    bunch = load_iris()
    x = bunch.data.copy()
    for row, values in UCI_IRIS_ROWS.items():
        x[row] = values
    names = [bunch.target_names[t] for t in bunch.target]
    header = ["sepal_length", "sepal_width", "petal_length", "petal_width", "species"]
    rows = [[fmt(v) for v in feat] + [name] for feat, name in zip(x, names)]
    write_csv("iris.csv", header, rows)


def make_wine():
    bunch = load_wine()
    header = [n.replace("/", "_") for n in bunch.feature_names] + ["cultivar"]
    rows = [
        [fmt(v) for v in feat] + [f"cultivar_{t}"]
        for feat, t in zip(bunch.data, bunch.target)
    ]
    write_csv("wine.csv", header, rows)


def make_digits389():
    bunch = load_digits()
    keep = np.isin(bunch.target, (3, 8, 9))
    header = [f"px{i:02d}" for i in range(64)] + ["digit"]
    rows = [
        [fmt(v) for v in feat] + [f"digit_{t}"]
        for feat, t in zip(bunch.data[keep], bunch.target[keep])
    ]
    write_csv("digits389.csv", header, rows)


def make_blobs1200():
    rng = np.random.default_rng(20240817)
    n_per, n_classes, dim = 200, 6, 16
    centers = rng.uniform(-8.0, 8.0, size=(n_classes, dim))
    rows = []
    for c in range(n_classes):
        pts = centers[c] + rng.normal(0.0, 1.1, size=(n_per, dim))
        for p in pts:
            rows.append([f"{v:.6f}" for v in p] + [f"blob_{c}"])
    order = rng.permutation(len(rows))
    rows = [rows[i] for i in order]
    header = [f"f{i:02d}" for i in range(dim)] + ["blob"]
    write_csv("blobs1200.csv", header, rows)


if __name__ == "__main__":
    os.makedirs(OUT_DIR, exist_ok=True)
    make_iris()
    make_wine()
    make_digits389()
    make_blobs1200()
