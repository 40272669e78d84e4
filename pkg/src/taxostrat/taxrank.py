"""Taxonomic ranking of researchers from result-to-taxonomy mappings.

Each researcher's main results are mapped to taxonomy nodes; the list of
node layers (depths, duplicates kept) determines a *taxonomic rank*:

    rank = b - 0.1 * (number of layers equal to b) - 0.01 * (deeper layers)

where ``b`` is the shallowest mapped layer.  Smaller is better: a researcher
whose results lift to shallow, general subdomains ranks ahead of one whose
results stay deep and narrow.  Cohort ranks are then normalized to an
integer 0..100 scale (100 = best observed rank) and cut into three strata
around the scale points 70 / 30 / 0.

All rank arithmetic is done in exact integer/rational form and only
converted to float at the boundary, so equal-by-construction ranks compare
equal bit-for-bit.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EmptyMapping, ParseError, UnknownTaxon
from .taxonomy import PathLike, TaxonPath, Taxonomy, as_path

__all__ = [
    "STRATUM_CENTRES",
    "RankUnderflowWarning",
    "ResultMapping",
    "RankRecord",
    "derived_rank",
    "normalize_ranks",
    "assign_stratum",
    "assign_strata",
    "assign_strata_kmeans",
    "rank_cohort",
    "unknown_taxons",
    "read_mappings",
]

#: Normalized-scale anchor of each stratum, best first (stratum 1, 2, 3).
STRATUM_CENTRES: tuple[int, int, int] = (70, 30, 0)


class RankUnderflowWarning(UserWarning):
    """A very large mapping pushed the rank a whole unit below its base layer."""


@dataclass(frozen=True)
class ResultMapping:
    """One researcher's results mapped to taxonomy nodes (duplicates kept)."""

    researcher_id: str
    taxons: tuple[TaxonPath, ...]

    def __post_init__(self) -> None:
        if not self.taxons:
            raise EmptyMapping(f"researcher {self.researcher_id!r} maps to no taxons")

    @property
    def layers(self) -> tuple[int, ...]:
        return tuple(path.layer for path in self.taxons)


@dataclass(frozen=True)
class RankRecord:
    """Scored cohort member: raw rank ``tr``, normalized ``trn``, stratum."""

    researcher_id: str
    layers: tuple[int, ...]
    base_rank: int
    tr: float
    trn: int
    stratum: int


def derived_rank(layers: Iterable[int]) -> float:
    """Taxonomic rank of a layer multiset.

    ``derived_rank([4, 5, 4])`` = 4 - 0.2 - 0.01 = 3.79.  Duplicated layers
    count with multiplicity.  Raises :class:`EmptyMapping` on empty input.
    """
    layer_list = tuple(layers)
    if not layer_list:
        raise EmptyMapping("cannot rank an empty mapping")
    if any(not isinstance(l, int) or l < 1 for l in layer_list):
        raise ValueError(f"layers must be integers >= 1: {layer_list}")
    base = min(layer_list)
    at_base = sum(1 for l in layer_list if l == base)
    deeper = len(layer_list) - at_base
    if 10 * at_base + deeper >= 100:
        warnings.warn(
            f"rank {base} - {at_base}*0.1 - {deeper}*0.01 crosses the next "
            "integer layer; interpret with care",
            RankUnderflowWarning,
            stacklevel=2,
        )
    centi = 100 * base - 10 * at_base - deeper
    return centi / 100.0


def _round_half_away(q: Fraction) -> int:
    if q >= 0:
        return math.floor(q + Fraction(1, 2))
    return -math.floor(-q + Fraction(1, 2))


def normalize_ranks(
    ranks: Sequence[float],
    bounds: tuple[float, float] | None = None,
) -> list[int]:
    """Map raw ranks onto the integer 0..100 scale (100 = best = smallest).

    With ``bounds=(lo, hi)`` the affine map uses those extremes instead of
    the observed ones (values outside still map affinely, possibly outside
    0..100).  A degenerate cohort (all ranks equal) maps to all 100.
    Rounding is half away from zero, computed exactly.
    """
    rank_list = [float(r) for r in ranks]
    if not rank_list:
        raise ValueError("no ranks to normalize")
    if bounds is None:
        lo, hi = min(rank_list), max(rank_list)
    else:
        lo, hi = float(bounds[0]), float(bounds[1])
        if hi < lo:
            raise ValueError(f"bounds out of order: ({lo}, {hi})")
    if hi == lo:
        return [100] * len(rank_list)
    low, high = Fraction(lo), Fraction(hi)
    span = high - low
    return [_round_half_away(100 * (high - Fraction(r)) / span) for r in rank_list]


def assign_stratum(trn: int) -> int:
    """Stratum of one normalized rank: nearest of the 70/30/0 anchors.

    Exact midpoints (50, 15) resolve toward the smaller anchor, i.e. the
    worse stratum.
    """
    _dist, _centre, stratum = min(
        (abs(trn - centre), centre, stratum)
        for stratum, centre in enumerate(STRATUM_CENTRES, start=1)
    )
    return stratum


def assign_strata(trns: Sequence[int]) -> list[int]:
    """Vector form of :func:`assign_stratum`."""
    return [assign_stratum(t) for t in trns]


def assign_strata_kmeans(trns: Sequence[int]) -> list[int]:
    """Alternative strata via optimal 3-means on the normalized ranks.

    Clusters are relabelled so stratum 1 holds the highest normalized ranks.
    Useful as a cross-check of the fixed-anchor rule; requires >= 3 values.
    """
    from .stratify import kmeans_1d  # deferred: keeps this module numpy-free

    assignment, _centres, _objective = kmeans_1d([float(t) for t in trns], 3)
    k = 3
    return [k + 1 - int(label) for label in assignment]


def rank_cohort(
    taxonomy: Taxonomy,
    mappings: Sequence[ResultMapping],
    *,
    strict: bool = True,
    bounds: tuple[float, float] | None = None,
    strata: str = "anchors",
) -> list[RankRecord]:
    """Score a cohort of researchers against one taxonomy.

    ``strict=True`` raises :class:`UnknownTaxon` on the first mapped path
    absent from the taxonomy; ``strict=False`` scores regardless (callers
    may surface a warning).  ``strata`` selects ``"anchors"`` (nearest of
    70/30/0) or ``"kmeans"`` (optimal 3-means on the normalized ranks).
    Records are returned in mapping order.
    """
    if strata not in ("anchors", "kmeans"):
        raise ValueError(f"unknown strata mode {strata!r}")
    if strict:
        for mapping in mappings:
            for path in mapping.taxons:
                if path not in taxonomy.nodes:
                    raise UnknownTaxon(path, mapping.researcher_id)
    layer_lists = [mapping.layers for mapping in mappings]
    ranks = [derived_rank(layers) for layers in layer_lists]
    trns = normalize_ranks(ranks, bounds=bounds)
    strata_values = assign_strata(trns) if strata == "anchors" else assign_strata_kmeans(trns)
    return [
        RankRecord(
            researcher_id=mapping.researcher_id,
            layers=layers,
            base_rank=min(layers),
            tr=rank,
            trn=trn,
            stratum=stratum,
        )
        for mapping, layers, rank, trn, stratum in zip(
            mappings, layer_lists, ranks, trns, strata_values
        )
    ]


def unknown_taxons(taxonomy: Taxonomy, mappings: Sequence[ResultMapping]) -> list[tuple[str, TaxonPath]]:
    """All (researcher_id, path) pairs whose path is absent from the taxonomy."""
    return [
        (mapping.researcher_id, path)
        for mapping in mappings
        for path in mapping.taxons
        if path not in taxonomy.nodes
    ]


def read_mappings(text: str) -> list[ResultMapping]:
    """Parse the two-column mapping CSV: header ``researcher_id,taxon_path``.

    One row per mapped result; rows of one researcher need not be adjacent
    and duplicates are kept.  Researchers appear in first-occurrence order.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("empty mapping CSV") from None
    if [h.strip() for h in header] != ["researcher_id", "taxon_path"]:
        raise ParseError(
            f"mapping CSV must start with header 'researcher_id,taxon_path', got {header!r}"
        )
    grouped: dict[str, list[TaxonPath]] = {}
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise ParseError(f"line {lineno}: expected 2 columns, got {len(row)}", line=lineno)
        researcher_id = row[0].strip()
        if not researcher_id:
            raise ParseError(f"line {lineno}: empty researcher_id", line=lineno)
        try:
            path = TaxonPath.parse(row[1])
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}", line=lineno) from None
        grouped.setdefault(researcher_id, []).append(path)
    return [ResultMapping(rid, tuple(paths)) for rid, paths in grouped.items()]
