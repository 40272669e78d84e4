"""Least-squares stratification of multicriteria score tables.

Given an N x M matrix of nonnegative criterion scores, find a weight vector
``w`` on the probability simplex, K stratum centres ``c`` and a partition of
the rows minimizing

    sum_k sum_{i in stratum k} (x_i . w - c_k)^2

The solver alternates two exact-or-monotone steps from multiple seeded
starts:

* partition step -- optimal 1-D k-means of the combined scores ``X w``
  (dynamic program over the sorted values; globally optimal, clusters are
  contiguous in score order);
* weight step -- convex QP ``min w' Q w`` over the simplex, solved by
  projected gradient with Armijo backtracking, where ``Q`` pools the
  within-stratum scatter.

Each step never increases the objective, so the per-iteration objective
trace is non-increasing and the alternation stops at a fixed point.  A
principal-component aggregation of the same table (power iteration on the
uncentred Gram matrix) is provided as an independent comparator.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._kernels import BACKEND, dp_kmeans_sorted
from .errors import (
    BadK,
    DimensionMismatch,
    EmptyStratum,
    NonFinite,
    ParseError,
    ZeroMatrix,
)
from .stats import minmax_normalize

__all__ = [
    "BACKEND",
    "CriteriaMatrix",
    "StratificationSolution",
    "PcaAggregate",
    "combined_criterion",
    "kmeans_1d",
    "project_to_simplex",
    "solve_weights",
    "ls_stratify",
    "pca_aggregate",
]

#: Equal-cost/equal-centre comparisons use this absolute slack.
_TIE_TOL = 1e-12


@dataclass(frozen=True)
class CriteriaMatrix:
    """N researchers/objects scored on M named criteria."""

    row_ids: tuple[str, ...]
    criterion_names: tuple[str, ...]
    scores: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.scores, dtype=np.float64, copy=True)
        if arr.ndim != 2:
            raise DimensionMismatch(f"scores must be 2-D, got shape {arr.shape}")
        if arr.shape != (len(self.row_ids), len(self.criterion_names)):
            raise DimensionMismatch(
                f"scores shape {arr.shape} does not match "
                f"{len(self.row_ids)} ids x {len(self.criterion_names)} criteria"
            )
        if arr.size and not np.all(np.isfinite(arr)):
            raise NonFinite("criterion scores must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "scores", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.scores.shape

    @classmethod
    def from_csv(cls, text: str) -> "CriteriaMatrix":
        """Parse ``id,<criterion>,...`` CSV with one row per object."""
        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty criteria CSV") from None
        if len(header) < 2:
            raise ParseError("criteria CSV needs an id column and at least one criterion")
        names = tuple(h.strip() for h in header[1:])
        ids: list[str] = []
        rows: list[list[float]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"line {lineno}: expected {len(header)} columns, got {len(row)}",
                    line=lineno,
                )
            ids.append(row[0].strip())
            try:
                rows.append([float(cell) for cell in row[1:]])
            except ValueError:
                raise ParseError(f"line {lineno}: non-numeric score", line=lineno) from None
        if not ids:
            raise ParseError("criteria CSV has no data rows")
        return cls(tuple(ids), names, np.array(rows, dtype=np.float64))

    def normalized(self, lo: float = 0.0, hi: float = 100.0) -> "CriteriaMatrix":
        """Column-wise min-max rescale onto [lo, hi] (ConstantInput if flat)."""
        cols = [minmax_normalize(self.scores[:, j], lo, hi) for j in range(self.scores.shape[1])]
        return CriteriaMatrix(self.row_ids, self.criterion_names, np.column_stack(cols))


@dataclass(frozen=True)
class StratificationSolution:
    """Best solution found by :func:`ls_stratify` plus run diagnostics.

    ``assignment`` holds stratum labels 1..K ordered by ascending centre;
    ``trace`` is the objective after each committed outer iteration of the
    winning restart (non-increasing); ``restart_objectives`` records every
    restart's final objective in start order.
    """

    weights: np.ndarray
    centres: np.ndarray
    assignment: np.ndarray
    objective: float
    iterations: int
    restarts_used: int
    trace: tuple[float, ...]
    restart_objectives: tuple[float, ...]

    @property
    def k(self) -> int:
        return len(self.centres)


@dataclass(frozen=True)
class PcaAggregate:
    """First-principal-component aggregation of a criteria matrix."""

    weights: np.ndarray
    residual_share: float
    scores: np.ndarray


def combined_criterion(matrix: CriteriaMatrix, weights: Sequence[float]) -> np.ndarray:
    """Weighted combined score ``X w`` of every row."""
    w = np.asarray(weights, dtype=np.float64).ravel()
    if w.shape[0] != matrix.scores.shape[1]:
        raise DimensionMismatch(
            f"{w.shape[0]} weights for {matrix.scores.shape[1]} criteria"
        )
    return matrix.scores @ w


def kmeans_1d(values: Sequence[float], k: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Globally optimal k-means of scalar values.

    Returns ``(assignment, centres, objective)``: labels 1..K numbered by
    ascending centre, centres weakly ascending, and the minimal total
    within-cluster sum of squared deviations.  Ties between equal values are
    resolved by original position (stable), so the result is deterministic.
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    n = v.shape[0]
    if not 1 <= k <= n:
        raise BadK(f"k must be in 1..{n}, got {k}")
    if not np.all(np.isfinite(v)):
        raise NonFinite("values must be finite")
    order = np.argsort(v, kind="stable")
    bounds, objective = dp_kmeans_sorted(v[order], k)
    assignment = np.empty(n, dtype=np.intp)
    centres = np.empty(k, dtype=np.float64)
    for j in range(k):
        members = order[bounds[j] : bounds[j + 1]]
        assignment[members] = j + 1
        centres[j] = v[members].mean()
    return assignment, centres, float(objective)


def project_to_simplex(point: Sequence[float]) -> np.ndarray:
    """Euclidean projection onto the probability simplex."""
    y = np.asarray(point, dtype=np.float64).ravel()
    if y.size == 0:
        raise DimensionMismatch("cannot project an empty vector")
    u = np.sort(y)[::-1]
    cumulative = np.cumsum(u)
    counts = np.arange(1, y.size + 1)
    support = np.nonzero(u - (cumulative - 1.0) / counts > 0.0)[0][-1] + 1
    threshold = (cumulative[support - 1] - 1.0) / support
    return np.maximum(y - threshold, 0.0)


def _scatter_matrix(scores: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """Pooled within-stratum scatter Q; EmptyStratum if a label is unused."""
    m = scores.shape[1]
    q = np.zeros((m, m))
    for stratum in range(1, k + 1):
        members = scores[labels == stratum]
        if members.shape[0] == 0:
            raise EmptyStratum(stratum)
        deviations = members - members.mean(axis=0)
        q += deviations.T @ deviations
    return q


def _minimize_simplex_qp(
    q: np.ndarray,
    w0: np.ndarray,
    tol: float,
    max_iter: int,
) -> np.ndarray:
    """Projected-gradient descent of ``w' Q w`` over the simplex.

    Armijo backtracking with step doubling; stops on relative improvement
    below ``tol``, a stationary projection, or ``max_iter`` sweeps.  The
    objective never increases.
    """
    w = w0
    objective = float(w @ q @ w)
    step = 1.0
    for _ in range(max_iter):
        gradient = 2.0 * (q @ w)
        accepted = None
        while step > 1e-20:
            candidate = project_to_simplex(w - step * gradient)
            direction = candidate - w
            if not direction.any():
                break
            value = float(candidate @ q @ candidate)
            if value <= objective + 1e-4 * float(gradient @ direction):
                accepted = (candidate, value)
                break
            step *= 0.5
        if accepted is None:
            break  # stationary: projection returns w (or step underflowed)
        w, new_objective = accepted
        improvement = objective - new_objective
        objective = new_objective
        step *= 2.0
        if improvement <= tol * objective:
            break
    return _polish_simplex_qp(q, w)


def _polish_simplex_qp(q: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Exact active-set refinement of a projected-gradient iterate.

    Projected gradient identifies the face of the simplex holding the
    minimum but closes the remaining gap only slowly when ``Q`` is
    ill-conditioned.  Solving the equality-constrained KKT system on the
    detected support (adjusting it when a sign or optimality check fails)
    lands on the exact constrained minimum; if the refinement cannot be
    verified the PG iterate is returned unchanged.  Never increases the
    objective.
    """
    m = q.shape[0]
    scale = max(1.0, float(np.abs(q).max()))
    support = w > 1e-12
    if not support.any():
        return w
    for _ in range(2 * m + 2):
        idx = np.flatnonzero(support)
        size = idx.shape[0]
        kkt = np.zeros((size + 1, size + 1))
        kkt[:size, :size] = 2.0 * q[np.ix_(idx, idx)]
        kkt[:size, size] = -1.0
        kkt[size, :size] = 1.0
        rhs = np.zeros(size + 1)
        rhs[size] = 1.0
        try:
            solution = np.linalg.solve(kkt, rhs)
        except np.linalg.LinAlgError:
            solution, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
        if not np.all(np.isfinite(solution)) or np.abs(kkt @ solution - rhs).max() > 1e-8 * scale:
            return w
        if solution[:size].min() < -1e-12:
            support[idx[np.argmin(solution[:size])]] = False
            if not support.any():
                return w
            continue
        candidate = np.zeros(m)
        candidate[idx] = np.maximum(solution[:size], 0.0)
        candidate /= candidate.sum()
        multiplier = solution[size]  # common gradient value on the support
        gradient = 2.0 * (q @ candidate)
        outside = np.flatnonzero(~support)
        if outside.size and multiplier - gradient[outside].min() > 1e-9 * scale:
            support[outside[np.argmin(gradient[outside])]] = True
            continue
        if float(candidate @ q @ candidate) <= float(w @ q @ w) + 1e-12 * scale:
            return candidate
        return w
    return w


def solve_weights(
    matrix: CriteriaMatrix,
    assignment: Sequence[int],
    *,
    start: Sequence[float] | None = None,
    tol: float = 1e-10,
    max_iter: int = 500,
) -> np.ndarray:
    """Optimal simplex weights for a fixed partition (centres at stratum means).

    ``assignment`` must use every label 1..K at least once, otherwise
    :class:`EmptyStratum` is raised.
    """
    labels = np.asarray(assignment, dtype=np.intp).ravel()
    n, m = matrix.scores.shape
    if labels.shape[0] != n:
        raise DimensionMismatch(f"{labels.shape[0]} labels for {n} rows")
    if n == 0 or labels.min() < 1:
        raise EmptyStratum(1 if n == 0 else int(labels.min()))
    k = int(labels.max())
    q = _scatter_matrix(matrix.scores, labels, k)
    if start is None:
        w0 = np.full(m, 1.0 / m)
    else:
        raw = np.asarray(start, dtype=np.float64).ravel()
        if raw.shape[0] != m:
            raise DimensionMismatch(f"{raw.shape[0]} start weights for {m} criteria")
        w0 = project_to_simplex(raw)
    return _minimize_simplex_qp(q, w0, tol, max_iter)


def _starting_weights(m: int, restarts: int, seed: int) -> list[np.ndarray]:
    """Deterministic restart schedule: uniform, each corner, Dirichlet draws."""
    starts = [np.full(m, 1.0 / m)]
    starts.extend(np.eye(m)[j] for j in range(m))
    if restarts > len(starts):
        rng = np.random.default_rng(seed)
        draws = rng.dirichlet(np.ones(m), size=restarts - len(starts))
        starts.extend(np.asarray(d) for d in draws)
    return starts[:restarts]


def _merge_equal_centres(
    assignment: np.ndarray,
    centres: np.ndarray,
    combined: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Collapse adjacent strata whose centres coincide (within ``_TIE_TOL``)."""
    k = centres.shape[0]
    relabel = np.empty(k + 1, dtype=np.intp)
    merged: list[list[int]] = []
    for label in range(1, k + 1):
        if merged and abs(centres[label - 2] - centres[label - 1]) <= _TIE_TOL:
            merged[-1].append(label)
        else:
            merged.append([label])
        relabel[label] = len(merged)
    if len(merged) == k:
        return assignment, centres
    new_assignment = relabel[assignment]
    new_centres = np.array(
        [combined[np.isin(assignment, group)].mean() for group in merged]
    )
    return new_assignment, new_centres


@dataclass(frozen=True)
class _Run:
    weights: np.ndarray
    assignment: np.ndarray
    centres: np.ndarray
    objective: float
    trace: tuple[float, ...]


def _alternate(
    matrix: CriteriaMatrix,
    k: int,
    w0: np.ndarray,
    tol: float,
    max_outer: int,
    qp_tol: float,
    qp_max_iter: int,
) -> _Run:
    """One restart: alternate the partition and weight steps to a fixed point."""
    weights = w0
    combined = matrix.scores @ weights
    assignment, centres, objective = kmeans_1d(combined, k)
    trace = [objective]
    for _ in range(max_outer):
        q = _scatter_matrix(matrix.scores, assignment, k)
        new_weights = _minimize_simplex_qp(q, weights, qp_tol, qp_max_iter)
        combined = matrix.scores @ new_weights
        new_assignment, new_centres, new_objective = kmeans_1d(combined, k)
        if new_objective < objective:
            improvement = objective - new_objective
            weights, assignment, centres, objective = (
                new_weights,
                new_assignment,
                new_centres,
                new_objective,
            )
            trace.append(objective)
            if improvement < tol:
                break
        else:
            break
    return _Run(weights, assignment, centres, objective, tuple(trace))


def ls_stratify(
    matrix: CriteriaMatrix,
    k: int,
    *,
    restarts: int = 20,
    seed: int = 0,
    tol: float = 1e-9,
    max_outer: int = 100,
) -> StratificationSolution:
    """Least-squares stratification into ``k`` strata.

    Runs the alternating solver from ``restarts`` deterministic starting
    weights (uniform, the M simplex corners, then seeded flat-Dirichlet
    draws) and keeps the lowest objective; among objectives equal within
    1e-12 the lexicographically smallest weight vector wins, making the
    result reproducible for a fixed ``(restarts, seed)``.
    """
    n, m = matrix.scores.shape
    if not 1 <= k <= n:
        raise BadK(f"k must be in 1..{n}, got {k}")
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    runs = [
        _alternate(matrix, k, w0, tol, max_outer, qp_tol=1e-10, qp_max_iter=500)
        for w0 in _starting_weights(m, restarts, seed)
    ]
    best = runs[0]
    for run in runs[1:]:
        if run.objective < best.objective - _TIE_TOL:
            best = run
        elif abs(run.objective - best.objective) <= _TIE_TOL and tuple(run.weights) < tuple(
            best.weights
        ):
            best = run
    combined = matrix.scores @ best.weights
    assignment, centres = _merge_equal_centres(best.assignment, best.centres, combined)
    return StratificationSolution(
        weights=best.weights,
        centres=centres,
        assignment=assignment,
        objective=best.objective,
        iterations=len(best.trace) - 1,
        restarts_used=len(runs),
        trace=best.trace,
        restart_objectives=tuple(run.objective for run in runs),
    )


def pca_aggregate(
    matrix: CriteriaMatrix,
    *,
    tol: float = 1e-12,
    max_iter: int = 100_000,
) -> PcaAggregate:
    """Aggregate criteria by the first principal axis of the uncentred Gram.

    Power iteration on ``X'X`` from the uniform direction; the dominant
    eigenvector (nonnegative for nonnegative scores, by Perron-Frobenius) is
    rescaled to sum to one and used as criterion weights.  The residual
    share ``1 - lambda_1 / trace(X'X)`` measures how much score mass the
    single axis fails to explain.
    """
    x = matrix.scores
    if np.any(x < 0):
        raise ValueError("PCA aggregation expects nonnegative scores")
    if not x.any():
        raise ZeroMatrix("all scores are zero")
    gram = x.T @ x
    m = gram.shape[0]
    vector = np.full(m, 1.0 / np.sqrt(m))
    for _ in range(max_iter):
        image = gram @ vector
        image /= np.linalg.norm(image)
        if np.max(np.abs(image - vector)) < tol:
            vector = image
            break
        vector = image
    if vector.sum() < 0.0:
        vector = -vector
    vector = np.maximum(vector, 0.0)
    weights = vector / vector.sum()
    eigenvalue = float(vector @ gram @ vector) / float(vector @ vector)
    residual = 1.0 - eigenvalue / float(np.trace(gram))
    residual = min(1.0, max(0.0, residual))
    return PcaAggregate(
        weights=weights,
        residual_share=residual,
        scores=x @ weights,
    )
