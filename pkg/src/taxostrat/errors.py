"""Exception hierarchy shared by all taxostrat modules.

Every error raised on purpose by this package derives from
:class:`TaxostratError`, so callers can catch one base class.  Validation
routines also *return* instances of the taxonomy violation classes as plain
data (without raising) when asked to enumerate problems.
"""

from __future__ import annotations


class TaxostratError(Exception):
    """Base class for all errors raised by this package."""


# --------------------------------------------------------------------------
# Taxonomy / mapping errors


class ParseError(TaxostratError, ValueError):
    """Malformed textual input (taxonomy line, dotted index, CSV cell).

    ``line`` carries the 1-based source line number when known.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class DuplicateTaxon(TaxostratError, ValueError):
    """The same dotted index appears more than once in a taxonomy."""

    def __init__(self, path, line: int | None = None):
        super().__init__(f"duplicate taxon {path}")
        self.path = path
        self.line = line


class OrphanTaxon(TaxostratError, ValueError):
    """A non-root taxon whose parent index is absent from the taxonomy."""

    def __init__(self, path):
        super().__init__(f"orphan taxon {path}: parent {_parent_str(path)} missing")
        self.path = path


class UnknownParent(TaxostratError, KeyError):
    """Attempt to attach a leaf under a parent that does not exist."""

    def __init__(self, path):
        super().__init__(f"unknown parent taxon {path}")
        self.path = path


class UnknownTaxon(TaxostratError, KeyError):
    """A mapping references a taxon absent from the taxonomy (strict mode)."""

    def __init__(self, path, researcher_id: str | None = None):
        where = f" (researcher {researcher_id})" if researcher_id else ""
        super().__init__(f"unknown taxon {path}{where}")
        self.path = path
        self.researcher_id = researcher_id


class EmptyMapping(TaxostratError, ValueError):
    """A researcher's result mapping contains no taxon paths."""


# --------------------------------------------------------------------------
# Stratification errors


class DimensionMismatch(TaxostratError, ValueError):
    """Vector/matrix shapes do not agree."""


class BadK(TaxostratError, ValueError):
    """Requested number of strata is outside 1..N."""


class EmptyStratum(TaxostratError, ValueError):
    """A supplied partition leaves one stratum with no members."""

    def __init__(self, stratum: int):
        super().__init__(f"stratum {stratum} has no members")
        self.stratum = stratum


class NonFinite(TaxostratError, ValueError):
    """Input contains NaN or infinity."""


class ZeroMatrix(TaxostratError, ValueError):
    """An all-zero score matrix cannot be aggregated."""


# --------------------------------------------------------------------------
# Correspondence analysis errors


class EmptyTable(TaxostratError, ValueError):
    """Contingency table has no rows, no columns, or zero grand total."""


class ZeroMarginal(TaxostratError, ValueError):
    """An active row or column of a contingency table sums to zero."""

    def __init__(self, kind: str, label: str):
        super().__init__(f"{kind} {label!r} has zero total")
        self.kind = kind
        self.label = label


class ZeroProfile(TaxostratError, ValueError):
    """A supplementary profile sums to zero and cannot be projected."""


class BadAxis(TaxostratError, ValueError):
    """Requested factorial axis does not exist (or axes coincide)."""


# --------------------------------------------------------------------------
# Statistics errors


class ConstantInput(TaxostratError, ValueError):
    """An operation is undefined for a constant vector (zero variance/range)."""


class LengthMismatch(TaxostratError, ValueError):
    """Paired vectors differ in length (or are too short to correlate)."""


def _parent_str(path) -> str:
    text = str(path)
    head, _, _ = text.rpartition(".")
    return head or "<root>"
