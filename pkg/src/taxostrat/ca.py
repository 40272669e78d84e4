"""Correspondence analysis of contingency tables with supplementary elements.

Standard (symmetric-map) correspondence analysis: the table of counts is
converted to correspondence proportions, centred by the independence model,
standardized by the square roots of the row/column masses and decomposed by
SVD.  Principal coordinates are reported for both sides, so row and column
points share one display space and total inertia equals chi-square / n.

Supplementary (passive) rows or columns take no part in the decomposition;
their profiles are projected onto the active axes afterwards.  A profile
proportional to the column masses projects exactly onto the origin.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BadAxis,
    DimensionMismatch,
    EmptyTable,
    NonFinite,
    ParseError,
    ZeroMarginal,
    ZeroProfile,
)

__all__ = [
    "ContingencyTable",
    "CaModel",
    "ca_fit",
    "project_supplementary",
    "plane_inertia",
]

#: Axes whose singular value falls below both thresholds are dropped:
#: relative to the leading axis, and absolutely (CA singular values are
#: bounded by 1, so an absolute floor cleanly removes numeric noise of an
#: exactly rank-one table).
_SV_RTOL = 1e-12
_SV_ATOL = 1e-12


@dataclass(frozen=True)
class ContingencyTable:
    """Cross-tabulated counts with optional supplementary rows/columns.

    ``counts`` holds the active table (R x C, nonnegative, finite).
    Supplementary entries carry an id and a count vector over the opposite
    side's active categories.
    """

    row_ids: tuple[str, ...]
    col_ids: tuple[str, ...]
    counts: np.ndarray
    supplementary_rows: tuple[tuple[str, np.ndarray], ...] = field(default=())
    supplementary_cols: tuple[tuple[str, np.ndarray], ...] = field(default=())

    def __post_init__(self) -> None:
        arr = np.array(self.counts, dtype=np.float64, copy=True)
        if arr.ndim != 2:
            raise DimensionMismatch(f"counts must be 2-D, got shape {arr.shape}")
        if arr.shape != (len(self.row_ids), len(self.col_ids)):
            raise DimensionMismatch(
                f"counts shape {arr.shape} does not match "
                f"{len(self.row_ids)} rows x {len(self.col_ids)} columns"
            )
        if arr.size and not np.all(np.isfinite(arr)):
            raise NonFinite("counts must be finite")
        if arr.size and arr.min() < 0:
            raise ParseError("counts must be nonnegative")
        arr.setflags(write=False)
        object.__setattr__(self, "counts", arr)
        object.__setattr__(
            self,
            "supplementary_rows",
            self._frozen_extras(self.supplementary_rows, len(self.col_ids), "row"),
        )
        object.__setattr__(
            self,
            "supplementary_cols",
            self._frozen_extras(self.supplementary_cols, len(self.row_ids), "column"),
        )

    @staticmethod
    def _frozen_extras(entries, width: int, kind: str):
        out = []
        for label, vector in entries:
            vec = np.array(vector, dtype=np.float64, copy=True)
            if vec.shape != (width,):
                raise DimensionMismatch(
                    f"supplementary {kind} {label!r} has {vec.shape[0] if vec.ndim == 1 else '?'} "
                    f"entries, expected {width}"
                )
            if not np.all(np.isfinite(vec)):
                raise NonFinite(f"supplementary {kind} {label!r} must be finite")
            if vec.size and vec.min() < 0:
                raise ParseError(f"supplementary {kind} {label!r} must be nonnegative")
            vec.setflags(write=False)
            out.append((label, vec))
        return tuple(out)

    @classmethod
    def from_csv(cls, text: str) -> "ContingencyTable":
        """Parse ``id,<col>,...`` count CSV; a ``+`` id prefix marks a
        supplementary row (projected but not fitted)."""
        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty contingency CSV") from None
        if len(header) < 2:
            raise ParseError("contingency CSV needs an id column and at least one category")
        col_ids = tuple(h.strip() for h in header[1:])
        row_ids: list[str] = []
        rows: list[list[float]] = []
        extras: list[tuple[str, list[float]]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"line {lineno}: expected {len(header)} columns, got {len(row)}",
                    line=lineno,
                )
            label = row[0].strip()
            try:
                values = [float(cell) for cell in row[1:]]
            except ValueError:
                raise ParseError(f"line {lineno}: non-numeric count", line=lineno) from None
            if label.startswith("+"):
                extras.append((label[1:].strip(), values))
            else:
                row_ids.append(label)
                rows.append(values)
        if not row_ids:
            raise ParseError("contingency CSV has no active rows")
        return cls(
            tuple(row_ids),
            col_ids,
            np.array(rows, dtype=np.float64),
            supplementary_rows=tuple((label, np.array(v)) for label, v in extras),
        )


@dataclass(frozen=True)
class CaModel:
    """Fitted correspondence analysis in principal coordinates.

    Axes are ordered by descending singular value; ``inertia_shares`` sums
    to 1 over the kept axes and ``total_inertia`` equals chi-square of the
    active table divided by its grand total.
    """

    row_ids: tuple[str, ...]
    col_ids: tuple[str, ...]
    row_masses: np.ndarray
    col_masses: np.ndarray
    singular_values: np.ndarray
    row_coords: np.ndarray
    col_coords: np.ndarray
    inertia_shares: np.ndarray
    total_inertia: float

    @property
    def n_axes(self) -> int:
        return self.singular_values.shape[0]


def ca_fit(table: ContingencyTable) -> CaModel:
    """Fit correspondence analysis to the active part of ``table``.

    Raises :class:`EmptyTable` for an empty table or zero grand total and
    :class:`ZeroMarginal` (naming the offender) when an active row or column
    sums to zero.  Axis orientation is fixed deterministically: on each axis
    the row coordinate of largest magnitude is made positive.
    """
    counts = table.counts
    if counts.size == 0:
        raise EmptyTable("contingency table has no active cells")
    total = float(counts.sum())
    if total <= 0.0:
        raise EmptyTable("contingency table sums to zero")
    row_sums = counts.sum(axis=1)
    col_sums = counts.sum(axis=0)
    for label, value in zip(table.row_ids, row_sums):
        if value == 0.0:
            raise ZeroMarginal("row", label)
    for label, value in zip(table.col_ids, col_sums):
        if value == 0.0:
            raise ZeroMarginal("column", label)

    proportions = counts / total
    row_masses = row_sums / total
    col_masses = col_sums / total
    expected = np.outer(row_masses, col_masses)
    residuals = (proportions - expected) / np.sqrt(expected)

    u, sigma_all, vt = np.linalg.svd(residuals, full_matrices=False)
    if sigma_all.size:
        keep = (sigma_all >= _SV_RTOL * sigma_all[0]) & (sigma_all >= _SV_ATOL)
    else:
        keep = np.zeros(0, dtype=bool)
    u, sigma, vt = u[:, keep], sigma_all[keep], vt[keep, :]

    row_standard = u / np.sqrt(row_masses)[:, None]
    col_standard = vt.T / np.sqrt(col_masses)[:, None]
    row_coords = row_standard * sigma
    col_coords = col_standard * sigma
    for axis in range(sigma.shape[0]):
        anchor = int(np.argmax(np.abs(row_coords[:, axis])))
        if row_coords[anchor, axis] < 0.0:
            row_coords[:, axis] = -row_coords[:, axis]
            col_coords[:, axis] = -col_coords[:, axis]

    total_inertia = float(np.sum(sigma_all**2))
    shares = (
        sigma**2 / total_inertia if total_inertia > 0.0 else np.zeros_like(sigma)
    )
    return CaModel(
        row_ids=table.row_ids,
        col_ids=table.col_ids,
        row_masses=row_masses,
        col_masses=col_masses,
        singular_values=sigma,
        row_coords=row_coords,
        col_coords=col_coords,
        inertia_shares=shares,
        total_inertia=total_inertia,
    )


def project_supplementary(
    model: CaModel,
    profile: Sequence[float],
    side: str = "row",
) -> np.ndarray:
    """Principal coordinates of a passive profile on the fitted axes.

    ``side="row"`` projects a count vector over the active columns (a row
    profile); ``side="col"`` a vector over the active rows.  The profile is
    normalized to proportions first, so any positive scaling projects to the
    same point.  Raises :class:`ZeroProfile` on a zero vector.
    """
    if side not in ("row", "col"):
        raise ValueError(f"side must be 'row' or 'col', got {side!r}")
    vec = np.asarray(profile, dtype=np.float64).ravel()
    expected = len(model.col_ids) if side == "row" else len(model.row_ids)
    if vec.shape[0] != expected:
        raise DimensionMismatch(f"profile has {vec.shape[0]} entries, expected {expected}")
    if not np.all(np.isfinite(vec)):
        raise NonFinite("profile must be finite")
    total = float(vec.sum())
    if total == 0.0:
        raise ZeroProfile("cannot project a zero profile")
    shares = vec / total
    base = model.col_coords if side == "row" else model.row_coords
    # transition relation: profile . standard coordinates of the other side
    with np.errstate(divide="ignore", invalid="ignore"):
        standard = np.where(model.singular_values > 0.0, base / model.singular_values, 0.0)
    return shares @ standard


def plane_inertia(model: CaModel, axes: tuple[int, int] = (1, 2)) -> float:
    """Share of total inertia captured by a pair of distinct 1-based axes."""
    first, second = axes
    for axis in (first, second):
        if not 1 <= axis <= model.n_axes:
            raise BadAxis(f"axis {axis} out of range 1..{model.n_axes}")
    if first == second:
        raise BadAxis(f"axes must be distinct, got ({first}, {second})")
    return float(model.inertia_shares[first - 1] + model.inertia_shares[second - 1])
