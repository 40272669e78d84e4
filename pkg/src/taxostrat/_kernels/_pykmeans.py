"""Pure-numpy dynamic program for optimal 1-D k-means on sorted input.

Reference implementation; the Cython twin in ``_ckmeans.pyx`` performs the
same operations in the same order so both backends return identical floats.
"""

from __future__ import annotations

import numpy as np


def dp_kmeans_sorted(values: np.ndarray, k: int) -> tuple[np.ndarray, float]:
    """Optimal contiguous K-partition of ascending ``values``.

    Returns ``(bounds, cost)`` where ``bounds`` has ``k + 1`` entries and
    cluster ``j`` covers ``values[bounds[j]:bounds[j+1]]``; ``cost`` is the
    minimal total within-cluster sum of squared deviations.  Cluster count
    and ordering are exact (dynamic program over prefix sums); among equal-
    cost splits the one with the smallest boundary indices is returned.
    """
    v = np.ascontiguousarray(values, dtype=np.float64)
    n = v.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")

    prefix = np.zeros(n + 1)
    prefix_sq = np.zeros(n + 1)
    np.cumsum(v, out=prefix[1:])
    np.cumsum(v * v, out=prefix_sq[1:])

    # cost[m, j]: best cost of splitting the first j values into m+1 clusters
    cost = np.full((k, n + 1), np.inf)
    split = np.zeros((k, n + 1), dtype=np.intp)

    lengths = np.arange(1, n + 1, dtype=np.float64)
    seg = prefix[1:] - prefix[0]
    first = prefix_sq[1:] - prefix_sq[0] - seg * seg / lengths
    cost[0, 1:] = np.maximum(first, 0.0)

    for m in range(1, k):
        for j in range(m + 1, n + 1):
            starts = np.arange(m, j)
            seg = prefix[j] - prefix[starts]
            tail = prefix_sq[j] - prefix_sq[starts] - seg * seg / (j - starts).astype(np.float64)
            candidates = cost[m - 1, starts] + np.maximum(tail, 0.0)
            best = int(np.argmin(candidates))  # first minimum: smallest start
            cost[m, j] = candidates[best]
            split[m, j] = m + best

    bounds = np.empty(k + 1, dtype=np.intp)
    bounds[0] = 0
    bounds[k] = n
    j = n
    for m in range(k - 1, 0, -1):
        j = int(split[m, j])
        bounds[m] = j
    return bounds, float(cost[k - 1, n])
