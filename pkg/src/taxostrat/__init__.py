"""taxostrat: taxonomy-based research ranking and multicriteria stratification.

The package covers one evaluation pipeline end to end:

* parse and validate dotted-index taxonomies (:mod:`taxostrat.taxonomy`);
* derive taxonomic ranks, normalized ranks and strata for a cohort of
  researchers mapped onto a taxonomy (:mod:`taxostrat.taxrank`);
* stratify a multicriteria score table by alternating least squares, with a
  principal-component aggregation as comparator (:mod:`taxostrat.stratify`);
* run correspondence analysis with supplementary elements and render
  deterministic SVG factorial planes (:mod:`taxostrat.ca`,
  :mod:`taxostrat.svgplot`);
* correlation and scaling helpers (:mod:`taxostrat.stats`).

``taxostrat.stratify.BACKEND`` reports whether the compiled k-means kernel
or its pure-Python fallback is active.
"""

from __future__ import annotations

__version__ = "0.1.0"

from . import data
from .ca import CaModel, ContingencyTable, ca_fit, plane_inertia, project_supplementary
from .errors import TaxostratError
from .stats import CriterionVector, correlation_matrix, minmax_normalize, pearson
from .stratify import (
    BACKEND,
    CriteriaMatrix,
    PcaAggregate,
    StratificationSolution,
    combined_criterion,
    kmeans_1d,
    ls_stratify,
    pca_aggregate,
    solve_weights,
)
from .svgplot import ca_plane_svg, scatter_svg
from .taxonomy import (
    TaxonPath,
    Taxonomy,
    add_leaf,
    layer_of,
    parse_taxonomy,
    serialize_taxonomy,
    validate,
)
from .taxrank import (
    RankRecord,
    ResultMapping,
    assign_strata,
    assign_stratum,
    derived_rank,
    normalize_ranks,
    rank_cohort,
    read_mappings,
)

__all__ = [
    "__version__",
    "data",
    "TaxostratError",
    # taxonomy
    "TaxonPath",
    "Taxonomy",
    "parse_taxonomy",
    "serialize_taxonomy",
    "validate",
    "add_leaf",
    "layer_of",
    # ranking
    "ResultMapping",
    "RankRecord",
    "derived_rank",
    "normalize_ranks",
    "assign_stratum",
    "assign_strata",
    "rank_cohort",
    "read_mappings",
    # stratification
    "BACKEND",
    "CriteriaMatrix",
    "StratificationSolution",
    "PcaAggregate",
    "combined_criterion",
    "kmeans_1d",
    "solve_weights",
    "ls_stratify",
    "pca_aggregate",
    # correspondence analysis
    "ContingencyTable",
    "CaModel",
    "ca_fit",
    "project_supplementary",
    "plane_inertia",
    "ca_plane_svg",
    "scatter_svg",
    # statistics
    "CriterionVector",
    "pearson",
    "correlation_matrix",
    "minmax_normalize",
]
