"""Bundled example datasets.

* ``acm_ccs_excerpt.txt`` -- high-level ACM CCS 2012 subjects around data
  analysis, in the line-oriented taxonomy format.
* ``computer_journal_hierarchy.txt`` -- the Computer Journal article
  classification hierarchy (2000-2007), 63 nodes, depth up to 4.
* ``data_analysis_taxonomy.txt`` -- the excerpt extended to result level;
  the taxonomy referenced by ``scientist_mappings.csv``.
* ``scientist_mappings.csv`` -- results of 30 researchers mapped to the
  data-analysis taxonomy (two-column mapping CSV).
* ``eight_researchers_criteria.csv`` -- a small two-criterion score table
  whose exact least-squares stratification is known in closed form.
* ``themes_contingency.csv`` -- research themes by period with two
  supplementary rows, for correspondence analysis demos.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

__all__ = ["fixture_path", "fixture_text"]


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled dataset (for handing to the CLI)."""
    path = resources.files(__package__).joinpath(name)
    return Path(str(path))


def fixture_text(name: str) -> str:
    """Contents of a bundled dataset."""
    return resources.files(__package__).joinpath(name).read_text(encoding="utf-8")
