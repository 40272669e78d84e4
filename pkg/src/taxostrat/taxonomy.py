"""Dotted-index taxonomies: parsing, queries, validation, extension.

A taxonomy is a rooted forest whose nodes are addressed by dotted integer
indices (``5``, ``5.2``, ``5.2.1.2.4``).  The number of components of an
index is the node's *layer* (depth), starting at 1 for top-level domains.
Nodes carry a human-readable name; a node is *terminal* when no other node
lies below it.

The text format accepted by :func:`parse_taxonomy` is line-oriented::

    # comment
    1 Theory of computation
    1.1 Theory and algorithms for application domains
    5.2.1.2.4. Topic modeling

One node per line: dotted index, whitespace, name.  Blank lines and ``#``
comment lines are skipped; leading whitespace and a single trailing dot on
the index (common in printed hierarchies) are tolerated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Union

from .errors import DuplicateTaxon, OrphanTaxon, ParseError, UnknownParent

__all__ = [
    "TaxonPath",
    "TaxonNode",
    "Taxonomy",
    "as_path",
    "layer_of",
    "parse_taxonomy",
    "serialize_taxonomy",
    "validate",
    "add_leaf",
]


@dataclass(frozen=True, order=True)
class TaxonPath:
    """Dotted integer index of a taxonomy node.

    Ordering is lexicographic on the component tuple, which sorts a parent
    immediately before its descendants (``2 < 2.1 < 2.1.3 < 3``).
    """

    components: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.components, tuple):
            object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ParseError("taxon path needs at least one component")
        if any(not isinstance(c, int) or c < 1 for c in self.components):
            raise ParseError(f"taxon path components must be integers >= 1, got {self.components}")

    @classmethod
    def parse(cls, text: str) -> "TaxonPath":
        """Parse ``"5.2.1"`` (an optional single trailing dot is dropped)."""
        token = text.strip()
        if token.endswith("."):
            token = token[:-1]
        if not token:
            raise ParseError(f"empty taxon index {text!r}")
        parts = token.split(".")
        if not all(p.isdigit() for p in parts):
            raise ParseError(f"malformed taxon index {text!r}")
        components = tuple(int(p) for p in parts)
        if any(c < 1 for c in components):
            raise ParseError(f"taxon index components must be >= 1: {text!r}")
        return cls(components)

    @property
    def layer(self) -> int:
        """Depth of the node: number of dotted components."""
        return len(self.components)

    @property
    def parent(self) -> "TaxonPath | None":
        """Immediate ancestor, or ``None`` for a top-level node."""
        if len(self.components) == 1:
            return None
        return TaxonPath(self.components[:-1])

    def child(self, index: int) -> "TaxonPath":
        return TaxonPath(self.components + (index,))

    def __str__(self) -> str:
        return ".".join(str(c) for c in self.components)


PathLike = Union[TaxonPath, str]


def as_path(value: PathLike) -> TaxonPath:
    """Coerce a string or :class:`TaxonPath` to a :class:`TaxonPath`."""
    if isinstance(value, TaxonPath):
        return value
    return TaxonPath.parse(value)


def layer_of(value: PathLike) -> int:
    """Layer (depth) of a dotted index; pure function of the index text."""
    return as_path(value).layer


@dataclass(frozen=True)
class TaxonNode:
    """Resolved node: display name plus derived terminal flag."""

    name: str
    terminal: bool


@dataclass(frozen=True)
class Taxonomy:
    """Immutable taxonomy: ordered ``(path, name)`` entries.

    ``entries`` preserves source order and may contain duplicates (so that
    :func:`validate` can report them); ``nodes`` is the resolved view where
    the first occurrence of a path wins.
    """

    entries: tuple[tuple[TaxonPath, str], ...] = ()

    @cached_property
    def nodes(self) -> dict[TaxonPath, TaxonNode]:
        named: dict[TaxonPath, str] = {}
        for path, name in self.entries:
            named.setdefault(path, name)
        parents = {path.parent for path in named if path.layer > 1}
        return {
            path: TaxonNode(name=name, terminal=path not in parents)
            for path, name in named.items()
        }

    def __contains__(self, path: PathLike) -> bool:
        return as_path(path) in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[TaxonPath]:
        return iter(self.nodes)

    def name_of(self, path: PathLike) -> str:
        return self.nodes[as_path(path)].name

    def is_terminal(self, path: PathLike) -> bool:
        return self.nodes[as_path(path)].terminal

    def children(self, path: PathLike) -> list[TaxonPath]:
        parent = as_path(path)
        return sorted(p for p in self.nodes if p.parent == parent)


def parse_taxonomy(text: str, *, strict: bool = True) -> Taxonomy:
    """Parse the line-oriented taxonomy format into a validated tree.

    Raises :class:`ParseError` (with line number) on malformed lines; with
    ``strict=True`` (the default) also :class:`DuplicateTaxon` on repeated
    indices and :class:`OrphanTaxon` when a node's parent is missing.  With
    ``strict=False`` those structural problems are left in place for
    :func:`validate` to report.
    """
    pairs: list[tuple[TaxonPath, str]] = []
    seen: set[TaxonPath] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<index> <name>', got {line!r}", line=lineno)
        index_token, name = parts
        try:
            path = TaxonPath.parse(index_token)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}", line=lineno) from None
        if path in seen and strict:
            raise DuplicateTaxon(path, line=lineno)
        seen.add(path)
        pairs.append((path, name.strip()))
    if strict:
        for path, _name in pairs:
            if path.layer > 1 and path.parent not in seen:
                raise OrphanTaxon(path)
    return Taxonomy(tuple(pairs))


def serialize_taxonomy(taxonomy: Taxonomy) -> str:
    """Canonical text form: one node per line, sorted by index.

    Round-trips through :func:`parse_taxonomy` for any valid taxonomy.
    """
    lines = [f"{path} {node.name}" for path, node in sorted(taxonomy.nodes.items())]
    return "\n".join(lines) + ("\n" if lines else "")


def validate(taxonomy: Taxonomy) -> list[Exception]:
    """Enumerate structural violations without raising.

    Returns (possibly repeated-path) :class:`DuplicateTaxon` and
    :class:`OrphanTaxon` instances in deterministic order: duplicates in
    entry order first, then orphans in entry order.  Empty list means valid.
    """
    violations: list[Exception] = []
    seen: set[TaxonPath] = set()
    for path, _name in taxonomy.entries:
        if path in seen:
            violations.append(DuplicateTaxon(path))
        seen.add(path)
    flagged: set[TaxonPath] = set()
    for path, _name in taxonomy.entries:
        if path.layer > 1 and path.parent not in seen and path not in flagged:
            violations.append(OrphanTaxon(path))
            flagged.add(path)
    return violations


def add_leaf(taxonomy: Taxonomy, parent: PathLike, name: str) -> Taxonomy:
    """Return a new taxonomy with ``name`` attached under ``parent``.

    The new node receives the smallest child index not already in use, so
    attaching under node ``5`` with children ``5.1`` and ``5.2`` yields
    ``5.3`` (and with children ``5.1``, ``5.3`` yields ``5.2``).  Raises
    :class:`UnknownParent` if ``parent`` is absent.
    """
    parent_path = as_path(parent)
    if parent_path not in taxonomy.nodes:
        raise UnknownParent(parent_path)
    used = {p.components[-1] for p in taxonomy.nodes if p.parent == parent_path}
    index = 1
    while index in used:
        index += 1
    return Taxonomy(taxonomy.entries + ((parent_path.child(index), name),))
