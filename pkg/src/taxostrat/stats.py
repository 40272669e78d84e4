"""Correlation and scaling utilities for criterion vectors.

Pearson correlation is computed with compensated summation (``math.fsum``)
and a single square root, which makes the two bit-exactness guarantees hold:
a vector against itself gives exactly 1.0 and against its reflection exactly
-1.0 (both reduce to ``s / sqrt(s * s)``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import ConstantInput, LengthMismatch

__all__ = [
    "CriterionVector",
    "pearson",
    "correlation_matrix",
    "minmax_normalize",
]


@dataclass(frozen=True)
class CriterionVector:
    """Labelled vector of scores on one criterion."""

    label: str
    values: tuple[float, ...]

    @classmethod
    def of(cls, label: str, values: Sequence[float]) -> "CriterionVector":
        return cls(label, tuple(float(v) for v in values))


VectorLike = Union[CriterionVector, Sequence[float], np.ndarray]


def _values(vector: VectorLike) -> list[float]:
    if isinstance(vector, CriterionVector):
        return [float(v) for v in vector.values]
    return [float(v) for v in np.asarray(vector, dtype=np.float64).ravel()]


def pearson(x: VectorLike, y: VectorLike) -> float:
    """Pearson correlation of two equally long vectors.

    Raises :class:`LengthMismatch` on unequal (or < 2) lengths and
    :class:`ConstantInput` when either vector has zero variance.  The result
    is clamped to [-1, 1].
    """
    xs, ys = _values(x), _values(y)
    if len(xs) != len(ys):
        raise LengthMismatch(f"vector lengths differ: {len(xs)} vs {len(ys)}")
    n = len(xs)
    if n < 2:
        raise LengthMismatch("need at least two paired values")
    mean_x = math.fsum(xs) / n
    mean_y = math.fsum(ys) / n
    dx = [v - mean_x for v in xs]
    dy = [v - mean_y for v in ys]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0.0 or syy == 0.0:
        raise ConstantInput("correlation undefined for a constant vector")
    r = math.fsum(a * b for a, b in zip(dx, dy)) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def correlation_matrix(vectors: Sequence[VectorLike]) -> np.ndarray:
    """Symmetric matrix of pairwise Pearson correlations.

    The diagonal is exactly 1.0 by construction.  All vectors must share one
    length; errors from :func:`pearson` propagate.
    """
    values = [_values(v) for v in vectors]
    if not values:
        raise LengthMismatch("no vectors to correlate")
    lengths = {len(v) for v in values}
    if len(lengths) > 1:
        raise LengthMismatch(f"vector lengths differ: {sorted(lengths)}")
    m = len(values)
    out = np.eye(m)
    for i in range(m):
        for j in range(i + 1, m):
            out[i, j] = out[j, i] = pearson(values[i], values[j])
    return out


def minmax_normalize(values: VectorLike, lo: float = 0.0, hi: float = 100.0) -> np.ndarray:
    """Affinely map a vector onto [lo, hi] (observed min -> lo, max -> hi).

    The observed extremes map to the targets exactly; a vector already
    spanning [lo, hi] is returned unchanged.  Raises :class:`ConstantInput`
    when all values are equal.
    """
    arr = np.asarray(_values(values), dtype=np.float64)
    if arr.size == 0:
        raise ConstantInput("cannot normalize an empty vector")
    mn, mx = float(arr.min()), float(arr.max())
    if mx == mn:
        raise ConstantInput(f"all values equal ({mn}); range normalization undefined")
    if mn == lo and mx == hi:
        return arr.copy()
    return lo + ((arr - mn) / (mx - mn)) * (hi - lo)
