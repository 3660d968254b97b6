"""Reference numpy implementations of the distance kernels.

These define the semantics; the compiled extension in ``_fast`` is a drop-in
replacement.  Results agree up to floating point rounding, and tie handling
(first minimum in iteration order) is identical.
"""

import numpy as np


def sqdist_matrix(x, y):
    """Squared Euclidean distances between rows of x and rows of y."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    xx = np.einsum("ij,ij->i", x, x)
    yy = np.einsum("ij,ij->i", y, y)
    d = xx[:, None] + yy[None, :] - 2.0 * (x @ y.T)
    # rounding can push tiny true distances below zero
    np.clip(d, 0.0, None, out=d)
    return d


def sqdist_to_point(x, p):
    """Squared Euclidean distance from every row of x to the vector p."""
    d = np.asarray(x, dtype=np.float64) - np.asarray(p, dtype=np.float64)[None, :]
    return np.einsum("ij,ij->i", d, d)


def assign_nearest(x, centers):
    """Index of the nearest row of centers for each row of x.

    Ties go to the lowest center index.
    """
    return np.argmin(sqdist_matrix(x, centers), axis=1).astype(np.int64)


def dist_sums(x, candidates, members):
    """Summed Euclidean distance from each candidate row to all member rows.

    candidates and members are arrays of row indices into x.  Distances come
    from explicit coordinate differences rather than the expanded dot-product
    form: the expansion leaves ulp-sized residue on self distances, and after
    the square root that residue is large enough to flip medoid ties.
    """
    x = np.asarray(x, dtype=np.float64)
    diffs = x[np.asarray(candidates)][:, None, :] - x[np.asarray(members)][None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diffs, diffs))
    return d.sum(axis=1)


def closest_cross_pair(x, rows_a, rows_b):
    """Closest pair of rows of x, one drawn from rows_a and one from rows_b.

    Ties resolve to the earliest pair in (rows_a, rows_b) iteration order.
    Returns (row_a, row_b, distance).
    """
    rows_a = np.asarray(rows_a)
    rows_b = np.asarray(rows_b)
    d = sqdist_matrix(x[rows_a], x[rows_b])
    flat = int(np.argmin(d))
    i, j = divmod(flat, d.shape[1])
    return int(rows_a[i]), int(rows_b[j]), float(np.sqrt(d[i, j]))
