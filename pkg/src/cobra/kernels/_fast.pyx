# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled distance kernels.

Same contracts as ``pyfallback``; that module is the reference for semantics
and tie handling.  All inputs must be C-contiguous float64 / int64 arrays.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def sqdist_matrix(double[:, ::1] x, double[:, ::1] y):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t k = y.shape[0]
    cdef Py_ssize_t m = x.shape[1]
    out_arr = np.empty((n, k), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, f
    cdef double acc, diff
    for i in range(n):
        for j in range(k):
            acc = 0.0
            for f in range(m):
                diff = x[i, f] - y[j, f]
                acc += diff * diff
            out[i, j] = acc
    return out_arr


def sqdist_to_point(double[:, ::1] x, double[::1] p):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t m = x.shape[1]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, f
    cdef double acc, diff
    for i in range(n):
        acc = 0.0
        for f in range(m):
            diff = x[i, f] - p[f]
            acc += diff * diff
        out[i] = acc
    return out_arr


def assign_nearest(double[:, ::1] x, double[:, ::1] centers):
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t k = centers.shape[0]
    cdef Py_ssize_t m = x.shape[1]
    out_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef Py_ssize_t i, j, f, best
    cdef double acc, diff, best_d
    for i in range(n):
        best = 0
        best_d = -1.0
        for j in range(k):
            acc = 0.0
            for f in range(m):
                diff = x[i, f] - centers[j, f]
                acc += diff * diff
            if best_d < 0.0 or acc < best_d:
                best_d = acc
                best = j
        out[i] = best
    return out_arr


def dist_sums(double[:, ::1] x, cnp.int64_t[::1] candidates, cnp.int64_t[::1] members):
    cdef Py_ssize_t nc = candidates.shape[0]
    cdef Py_ssize_t nm = members.shape[0]
    cdef Py_ssize_t m = x.shape[1]
    out_arr = np.empty(nc, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j, f
    cdef Py_ssize_t ci, mj
    cdef double total, acc, diff
    for i in range(nc):
        ci = candidates[i]
        total = 0.0
        for j in range(nm):
            mj = members[j]
            acc = 0.0
            for f in range(m):
                diff = x[ci, f] - x[mj, f]
                acc += diff * diff
            total += sqrt(acc)
        out[i] = total
    return out_arr


def closest_cross_pair(double[:, ::1] x, cnp.int64_t[::1] rows_a, cnp.int64_t[::1] rows_b):
    cdef Py_ssize_t na = rows_a.shape[0]
    cdef Py_ssize_t nb = rows_b.shape[0]
    cdef Py_ssize_t m = x.shape[1]
    cdef Py_ssize_t i, j, f
    cdef Py_ssize_t ra, rb
    cdef Py_ssize_t best_a = 0, best_b = 0
    cdef double acc, diff, best_d = -1.0
    for i in range(na):
        ra = rows_a[i]
        for j in range(nb):
            rb = rows_b[j]
            acc = 0.0
            for f in range(m):
                diff = x[ra, f] - x[rb, f]
                acc += diff * diff
            if best_d < 0.0 or acc < best_d:
                best_d = acc
                best_a = ra
                best_b = rb
    return int(best_a), int(best_b), float(sqrt(best_d))
