"""Shared test oracles, computed independently of the library code.

Everything here uses brute force, exact rational arithmetic or closed-form
algebra so library results can be checked against a second route.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

# ---------------------------------------------------------------------------
# Expected cohort scores for the bundled 30-researcher mapping fixture:
# (researcher_id, rank, normalized rank, stratum).  The ranks follow from the
# layer multisets by the rank formula; the normalized ranks from the cohort
# extremes 3.50/4.90; the strata from the 70/30/0 anchors.
EXPECTED_COHORT = [
    ("S1", 3.88, 73, 1),
    ("S2", 3.50, 100, 1),
    ("S3", 4.50, 29, 2),
    ("S4", 3.90, 71, 1),
    ("S5", 4.50, 29, 2),
    ("S6", 3.77, 81, 1),
    ("S7", 4.80, 7, 3),
    ("S8", 4.50, 29, 2),
    ("S9", 4.50, 29, 2),
    ("S10", 4.80, 7, 3),
    ("S11", 3.86, 74, 1),
    ("S12", 3.86, 74, 1),
    ("S13", 3.86, 74, 1),
    ("S14", 4.90, 0, 3),
    ("S15", 4.90, 0, 3),
    ("S16", 4.90, 0, 3),
    ("S17", 4.39, 36, 2),
    ("S18", 4.79, 8, 3),
    ("S19", 4.69, 15, 3),
    ("S20", 4.79, 8, 3),
    ("S21", 3.57, 95, 1),
    ("S22", 4.78, 9, 3),
    ("S23", 3.79, 79, 1),
    ("S24", 4.90, 0, 3),
    ("S25", 4.89, 1, 3),
    ("S26", 3.77, 81, 1),
    ("S27", 4.60, 21, 2),
    ("S28", 3.90, 71, 1),
    ("S29", 4.88, 1, 3),
    ("S30", 4.88, 1, 3),
]

# The two-criterion eight-researcher demo table and its known solutions.
DEMO_ROWS = ["C1", "C2", "B1", "B2", "B3", "B4", "A1", "A2"]
DEMO_SCORES = np.array(
    [[2, 0], [0, 1], [6, 0], [5, 0.5], [3, 1.5], [1, 2.5], [4, 2], [2, 3]],
    dtype=float,
)
DEMO_LS_WEIGHTS = (1 / 3, 2 / 3)
DEMO_LS_CENTRES = (0.67, 2.00, 2.67)
DEMO_LS_ASSIGNMENT = (1, 1, 2, 2, 2, 2, 3, 3)
DEMO_PCA_WEIGHTS = (0.7712, 0.2288)
DEMO_PCA_RESIDUAL = 0.134
DEMO_PCA_SCORES = (1.54, 0.23, 4.63, 3.97, 2.66, 1.34, 3.54, 2.23)


def brute_force_kmeans_1d(values: Sequence[float], k: int) -> float:
    """Minimal k-means cost by enumerating every contiguous split of the
    sorted values (optimal clusters of scalars are contiguous)."""
    ordered = sorted(float(v) for v in values)
    n = len(ordered)
    best = math.inf
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0, *cuts, n)
        cost = 0.0
        for a, b in zip(bounds, bounds[1:]):
            block = ordered[a:b]
            mean = sum(block) / len(block)
            cost += sum((v - mean) ** 2 for v in block)
        best = min(best, cost)
    return best


def exact_pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson correlation with exact rational sums (one float square root)."""
    fx = [Fraction(float(v)) for v in xs]
    fy = [Fraction(float(v)) for v in ys]
    n = len(fx)
    num = n * sum(a * b for a, b in zip(fx, fy)) - sum(fx) * sum(fy)
    dx = n * sum(a * a for a in fx) - sum(fx) ** 2
    dy = n * sum(b * b for b in fy) - sum(fy) ** 2
    return float(num) / math.sqrt(float(dx * dy))


def chi_square(counts: np.ndarray) -> float:
    """Chi-square statistic of a contingency table, straight from the
    definition."""
    counts = np.asarray(counts, dtype=float)
    total = counts.sum()
    expected = np.outer(counts.sum(axis=1), counts.sum(axis=0)) / total
    return float(((counts - expected) ** 2 / expected).sum())


def symmetric_2x2_top_eigen(a: float, b: float, c: float) -> tuple[float, np.ndarray]:
    """Largest eigenvalue and eigenvector of [[a, b], [b, c]] in closed form."""
    top = ((a + c) + math.sqrt((a - c) ** 2 + 4 * b * b)) / 2
    vector = np.array([b, top - a]) if b != 0 else np.array([1.0, 0.0] if a >= c else [0.0, 1.0])
    return top, vector / np.linalg.norm(vector)
