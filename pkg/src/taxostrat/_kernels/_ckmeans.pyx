# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled dynamic program for optimal 1-D k-means on sorted input.

Same contract and operation order as ``_pykmeans.dp_kmeans_sorted``; the two
backends return bit-identical results.
"""

import numpy as np


def dp_kmeans_sorted(values, int k):
    """Optimal contiguous K-partition of ascending ``values``.

    Returns ``(bounds, cost)``: ``bounds`` has ``k + 1`` entries, cluster
    ``j`` covers ``values[bounds[j]:bounds[j+1]]``, ``cost`` is the minimal
    within-cluster sum of squared deviations.
    """
    cdef double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")

    prefix_arr = np.zeros(n + 1, dtype=np.float64)
    prefix_sq_arr = np.zeros(n + 1, dtype=np.float64)
    cdef double[::1] prefix = prefix_arr
    cdef double[::1] prefix_sq = prefix_sq_arr
    cdef Py_ssize_t i, j, m
    for i in range(n):
        prefix[i + 1] = prefix[i] + v[i]
        prefix_sq[i + 1] = prefix_sq[i] + v[i] * v[i]

    cost_arr = np.full((k, n + 1), np.inf)
    split_arr = np.zeros((k, n + 1), dtype=np.intp)
    cdef double[:, ::1] cost = cost_arr
    cdef Py_ssize_t[:, ::1] split = split_arr

    cdef double seg, tail, cand, best_val
    cdef Py_ssize_t best_idx
    for j in range(1, n + 1):
        seg = prefix[j] - prefix[0]
        tail = prefix_sq[j] - prefix_sq[0] - seg * seg / (<double> j)
        cost[0, j] = tail if tail > 0.0 else 0.0

    for m in range(1, k):
        for j in range(m + 1, n + 1):
            best_val = np.inf
            best_idx = m
            for i in range(m, j):
                seg = prefix[j] - prefix[i]
                tail = prefix_sq[j] - prefix_sq[i] - seg * seg / (<double> (j - i))
                if tail < 0.0:
                    tail = 0.0
                cand = cost[m - 1, i] + tail
                if cand < best_val:
                    best_val = cand
                    best_idx = i
            cost[m, j] = best_val
            split[m, j] = best_idx

    bounds_arr = np.empty(k + 1, dtype=np.intp)
    cdef Py_ssize_t[::1] bounds = bounds_arr
    bounds[0] = 0
    bounds[k] = n
    j = n
    for m in range(k - 1, 0, -1):
        j = split[m, j]
        bounds[m] = j
    return bounds_arr, float(cost[k - 1, n])
