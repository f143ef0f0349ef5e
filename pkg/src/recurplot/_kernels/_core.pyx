# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the O(M^2) matrix pipeline.

Semantics match ``_numpy`` exactly (same addition order, same packing
convention, integer block sums), so the two backends are interchangeable
bit for bit.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()


def pairwise_distances(const double[:, ::1] states):
    """Dense symmetric Euclidean distances between rows of ``states``."""
    cdef Py_ssize_t n = states.shape[0]
    cdef Py_ssize_t dim = states.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double acc, diff
    out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] d = out
    if dim == 1:
        for i in range(n):
            for j in range(i + 1, n):
                diff = fabs(states[i, 0] - states[j, 0])
                d[i, j] = diff
                d[j, i] = diff
    else:
        for i in range(n):
            for j in range(i + 1, n):
                acc = 0.0
                for k in range(dim):
                    diff = states[i, k] - states[j, k]
                    acc += diff * diff
                acc = sqrt(acc)
                d[i, j] = acc
                d[j, i] = acc
    return out


def pack_recurrence(const double[:, ::1] distances, const double[::1] thresholds):
    """Bit-packed recurrence bits: (i, j) set iff d[i,j] <= min(t[i], t[j])."""
    cdef Py_ssize_t n = distances.shape[0]
    cdef Py_ssize_t row_bytes = (n + 7) >> 3
    cdef Py_ssize_t i, j
    cdef double t
    out = np.zeros((n, row_bytes), dtype=np.uint8)
    cdef unsigned char[:, ::1] bits = out
    for i in range(n):
        for j in range(n):
            t = thresholds[i] if thresholds[i] < thresholds[j] else thresholds[j]
            if distances[i, j] <= t:
                bits[i, j >> 3] |= <unsigned char> (128 >> (j & 7))
    return out


def transition_scores(const unsigned char[:, ::1] rp, Py_ssize_t window):
    """Block-dissimilarity score for each split j in [window, M - window).

    s(j) = mean(rp[A, A]) + mean(rp[B, B]) - 2 * mean(rp[A, B]) with
    A = [j-window, j) and B = [j, j+window); block sums via an integer
    integral image.
    """
    cdef Py_ssize_t n = rp.shape[0]
    cdef Py_ssize_t w = window
    cdef Py_ssize_t i, j
    cdef long long left, right, cross
    integral = np.zeros((n + 1, n + 1), dtype=np.int64)
    cdef long long[:, ::1] s = integral
    for i in range(n):
        for j in range(n):
            s[i + 1, j + 1] = rp[i, j] + s[i, j + 1] + s[i + 1, j] - s[i, j]

    out = np.empty(n - 2 * w, dtype=np.float64)
    cdef double[::1] scores = out
    cdef double denom = <double> (w * w)
    for j in range(w, n - w):
        left = s[j, j] - s[j - w, j] - s[j, j - w] + s[j - w, j - w]
        right = s[j + w, j + w] - s[j, j + w] - s[j + w, j] + s[j, j]
        cross = s[j, j + w] - s[j - w, j + w] - s[j, j] + s[j - w, j]
        scores[j - w] = <double> (left + right - 2 * cross) / denom
    return out
