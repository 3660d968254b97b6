"""Distance kernels with a compiled fast path.

The Cython extension is used when importable; the numpy fallback covers
source checkouts without a build step.  Setting COBRA_PURE_PYTHON=1 forces
the fallback.  Both backends expose the same five functions with identical
tie handling, so everything above this package is backend-agnostic.
"""

import os

import numpy as np

from . import pyfallback

if os.environ.get("COBRA_PURE_PYTHON", "") not in ("", "0"):
    _impl = pyfallback
    BACKEND = "python"
else:
    try:
        from . import _fast as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = pyfallback
        BACKEND = "python"


def _as_matrix(x):
    return np.ascontiguousarray(np.asarray(x, dtype=np.float64))


def _as_vector(p):
    return np.ascontiguousarray(np.asarray(p, dtype=np.float64))


def _as_rows(idx):
    return np.ascontiguousarray(np.asarray(idx, dtype=np.int64))


def sqdist_matrix(x, y):
    """Squared Euclidean distances between rows of x and rows of y."""
    return _impl.sqdist_matrix(_as_matrix(x), _as_matrix(y))


def sqdist_to_point(x, p):
    """Squared Euclidean distance from every row of x to the vector p."""
    return _impl.sqdist_to_point(_as_matrix(x), _as_vector(p))


def assign_nearest(x, centers):
    """Nearest-center index per row of x; ties go to the lowest index."""
    return _impl.assign_nearest(_as_matrix(x), _as_matrix(centers))


def dist_sums(x, candidates, members):
    """Summed distance from each candidate row of x to all member rows."""
    return _impl.dist_sums(_as_matrix(x), _as_rows(candidates), _as_rows(members))


def closest_cross_pair(x, rows_a, rows_b):
    """Closest (row_a, row_b, distance) with rows drawn from the two sides.

    Ties resolve to the earliest pair in iteration order, so passing sorted
    row arrays makes the result lexicographically smallest.
    """
    return _impl.closest_cross_pair(_as_matrix(x), _as_rows(rows_a), _as_rows(rows_b))
