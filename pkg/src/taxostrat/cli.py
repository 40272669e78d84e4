"""Command-line interface.

Five subcommands over the library: ``validate`` (taxonomy structure),
``rank`` (taxonomic ranking of a mapped cohort), ``stratify`` (least-squares
stratification of a criteria table, optionally compared against PCA
aggregation), ``ca`` (correspondence analysis with optional SVG plane plot)
and ``corr`` (correlation matrix of criterion columns).

Reports go to stdout as CSV (default) or JSON; diagnostics go to stderr.
Every run is deterministic for fixed inputs and flags: fixed random seeds,
fixed float formatting (ranks 2 dp, weights/coordinates/scores 4 dp), no
timestamps.  Exit codes: 0 success, 1 validation violations found, 2 parse
or data-validity errors, 3 unknown taxon in strict ranking, 4 infeasible
stratum count, 5 zero marginal in correspondence analysis.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .ca import ContingencyTable, ca_fit, plane_inertia, project_supplementary
from .errors import (
    BadAxis,
    BadK,
    ConstantInput,
    DimensionMismatch,
    DuplicateTaxon,
    EmptyMapping,
    EmptyTable,
    LengthMismatch,
    NonFinite,
    OrphanTaxon,
    ParseError,
    TaxostratError,
    UnknownParent,
    UnknownTaxon,
    ZeroMarginal,
    ZeroProfile,
)
from .stratify import CriteriaMatrix, combined_criterion, ls_stratify, pca_aggregate
from .stats import correlation_matrix
from .svgplot import ca_plane_svg
from .taxonomy import parse_taxonomy, validate
from .taxrank import rank_cohort, read_mappings, unknown_taxons

__all__ = ["main"]

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_PARSE = 2
EXIT_UNKNOWN_TAXON = 3
EXIT_BAD_K = 4
EXIT_ZERO_MARGINAL = 5

_PARSE_ERRORS = (
    ParseError,
    DuplicateTaxon,
    OrphanTaxon,
    UnknownParent,
    EmptyMapping,
    EmptyTable,
    ZeroProfile,
    BadAxis,
    ConstantInput,
    LengthMismatch,
    DimensionMismatch,
    NonFinite,
    OSError,
)


def _fmt(value: float, decimals: int) -> str:
    rounded = round(float(value), decimals) + 0.0  # drop any negative zero
    return f"{rounded:.{decimals}f}"


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(lines: Sequence[str]) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


# --------------------------------------------------------------------------
# subcommands


def _cmd_validate(args: argparse.Namespace) -> int:
    taxonomy = parse_taxonomy(_read(args.taxonomy), strict=False)
    violations = validate(taxonomy)
    if violations:
        for violation in violations:
            print(str(violation))
        return EXIT_VIOLATIONS
    print(f"OK: {len(taxonomy)} taxons")
    return EXIT_OK


def _cmd_rank(args: argparse.Namespace) -> int:
    taxonomy = parse_taxonomy(_read(args.taxonomy))
    mappings = read_mappings(_read(args.mappings))
    strict = not args.no_strict
    if not strict:
        for researcher_id, path in unknown_taxons(taxonomy, mappings):
            _warn(f"unknown taxon {path} (researcher {researcher_id})")
    records = rank_cohort(taxonomy, mappings, strict=strict)
    if args.format == "json":
        _emit_json(
            {
                "schema_version": 1,
                "records": [
                    {
                        "researcher_id": r.researcher_id,
                        "layers": list(r.layers),
                        "base_rank": r.base_rank,
                        "tr": round(r.tr, 2),
                        "trn": r.trn,
                        "stratum": r.stratum,
                    }
                    for r in records
                ],
            }
        )
    else:
        lines = ["researcher_id,layers,base_rank,tr,trn,stratum"]
        lines += [
            f"{r.researcher_id},{' '.join(map(str, r.layers))},{r.base_rank},"
            f"{_fmt(r.tr, 2)},{r.trn},{r.stratum}"
            for r in records
        ]
        _emit(lines)
    return EXIT_OK


def _cmd_stratify(args: argparse.Namespace) -> int:
    matrix = CriteriaMatrix.from_csv(_read(args.criteria))
    if args.normalize:
        matrix = matrix.normalized()
    solution = ls_stratify(matrix, args.k, restarts=args.restarts, seed=args.seed)
    scores = combined_criterion(matrix, solution.weights)
    comparison = pca_aggregate(matrix) if args.compare_pca else None
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "k": solution.k,
            "restarts": solution.restarts_used,
            "seed": args.seed,
            "weights": {
                name: round(float(w), 4)
                for name, w in zip(matrix.criterion_names, solution.weights)
            },
            "centres": [round(float(c), 4) for c in solution.centres],
            "assignment": [
                {"id": row_id, "score": round(float(s), 4), "stratum": int(label)}
                for row_id, s, label in zip(matrix.row_ids, scores, solution.assignment)
            ],
            "objective": solution.objective,
            "iterations": solution.iterations,
            "trace": list(solution.trace),
        }
        if comparison is not None:
            payload["pca"] = {
                "weights": {
                    name: round(float(w), 4)
                    for name, w in zip(matrix.criterion_names, comparison.weights)
                },
                "residual_share": round(comparison.residual_share, 4),
                "scores": [
                    {"id": row_id, "score": round(float(s), 4)}
                    for row_id, s in zip(matrix.row_ids, comparison.scores)
                ],
            }
        _emit_json(payload)
    else:
        lines = [
            "objective,iterations,restarts",
            f"{solution.objective:.6e},{solution.iterations},{solution.restarts_used}",
            "",
            "criterion,weight",
        ]
        lines += [
            f"{name},{_fmt(w, 4)}"
            for name, w in zip(matrix.criterion_names, solution.weights)
        ]
        lines += ["", "stratum,centre"]
        lines += [f"{j + 1},{_fmt(c, 4)}" for j, c in enumerate(solution.centres)]
        lines += ["", "id,score,stratum"]
        lines += [
            f"{row_id},{_fmt(s, 4)},{int(label)}"
            for row_id, s, label in zip(matrix.row_ids, scores, solution.assignment)
        ]
        if comparison is not None:
            lines += ["", "criterion,pca_weight"]
            lines += [
                f"{name},{_fmt(w, 4)}"
                for name, w in zip(matrix.criterion_names, comparison.weights)
            ]
            lines += ["", "pca_residual_share", _fmt(comparison.residual_share, 4)]
            lines += ["", "id,pca_score"]
            lines += [
                f"{row_id},{_fmt(s, 4)}"
                for row_id, s in zip(matrix.row_ids, comparison.scores)
            ]
        _emit(lines)
    return EXIT_OK


def _parse_axes(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated axes, got {text!r}")
    try:
        first, second = int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"axes must be integers, got {text!r}") from None
    return first, second


def _cmd_ca(args: argparse.Namespace) -> int:
    table = ContingencyTable.from_csv(_read(args.table))
    model = ca_fit(table)
    axes = args.axes
    plane_share = None
    if axes is None and args.svg is not None:
        axes = (1, 2)
    if axes is not None:
        plane_share = plane_inertia(model, axes)
    if args.svg is not None:
        Path(args.svg).write_text(ca_plane_svg(model, table, axes), encoding="utf-8")

    supplementary = [
        ("sup_row", label, project_supplementary(model, vector, side="row"))
        for label, vector in table.supplementary_rows
    ] + [
        ("sup_col", label, project_supplementary(model, vector, side="col"))
        for label, vector in table.supplementary_cols
    ]
    if args.format == "json":
        payload = {
            "schema_version": 1,
            "total_inertia": model.total_inertia,
            "axes": [
                {
                    "axis": i + 1,
                    "singular_value": round(float(s), 6),
                    "inertia_share": round(float(share), 6),
                }
                for i, (s, share) in enumerate(
                    zip(model.singular_values, model.inertia_shares)
                )
            ],
            "rows": [
                {"id": row_id, "coords": [round(float(c), 4) for c in model.row_coords[i]]}
                for i, row_id in enumerate(model.row_ids)
            ],
            "cols": [
                {"id": col_id, "coords": [round(float(c), 4) for c in model.col_coords[j]]}
                for j, col_id in enumerate(model.col_ids)
            ],
            "supplementary": [
                {"kind": kind, "id": label, "coords": [round(float(c), 4) for c in coords]}
                for kind, label, coords in supplementary
            ],
        }
        if plane_share is not None:
            payload["plane"] = {"axes": list(axes), "inertia_share": round(plane_share, 6)}
        _emit_json(payload)
    else:
        lines = ["total_inertia,axes", f"{model.total_inertia:.6f},{model.n_axes}"]
        if plane_share is not None:
            lines += ["", "plane_axes,plane_inertia_share", f"{axes[0]} {axes[1]},{_fmt(plane_share, 6)}"]
        lines += ["", "axis,singular_value,inertia_share"]
        lines += [
            f"{i + 1},{_fmt(s, 6)},{_fmt(share, 6)}"
            for i, (s, share) in enumerate(zip(model.singular_values, model.inertia_shares))
        ]
        header = "kind,id," + ",".join(f"axis_{i + 1}" for i in range(model.n_axes))
        lines += ["", header]
        for i, row_id in enumerate(model.row_ids):
            coords = ",".join(_fmt(c, 4) for c in model.row_coords[i])
            lines.append(f"row,{row_id},{coords}")
        for j, col_id in enumerate(model.col_ids):
            coords = ",".join(_fmt(c, 4) for c in model.col_coords[j])
            lines.append(f"col,{col_id},{coords}")
        for kind, label, coords in supplementary:
            cells = ",".join(_fmt(c, 4) for c in coords)
            lines.append(f"{kind},{label},{cells}")
        _emit(lines)
    return EXIT_OK


def _cmd_corr(args: argparse.Namespace) -> int:
    matrices = [CriteriaMatrix.from_csv(_read(path)) for path in args.criteria]
    ids = matrices[0].row_ids
    for matrix, path in zip(matrices[1:], args.criteria[1:]):
        if matrix.row_ids != ids:
            offender = next(
                (a for a, b in zip(matrix.row_ids, ids) if a != b),
                matrix.row_ids[len(ids):][0] if len(matrix.row_ids) > len(ids) else "<missing>",
            )
            raise ParseError(f"{path}: row ids do not match first file (first offender: {offender})")
    names = [name for m in matrices for name in m.criterion_names]
    columns = [m.scores[:, j] for m in matrices for j in range(m.scores.shape[1])]
    matrix = correlation_matrix(columns)
    if args.format == "json":
        _emit_json(
            {
                "schema_version": 1,
                "criteria": names,
                "matrix": [[round(float(v), 4) for v in row] for row in matrix],
            }
        )
    else:
        lines = [",".join(["criterion"] + names[1:])]
        for i, name in enumerate(names[:-1]):
            cells = [""] * (len(names) - 1)
            for j in range(i + 1, len(names)):
                cells[j - 1] = _fmt(matrix[i, j], 4)
            lines.append(f"{name}," + ",".join(cells))
        _emit(lines)
    return EXIT_OK


# --------------------------------------------------------------------------
# parser plumbing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taxostrat",
        description="Taxonomy-based ranking, least-squares stratification and correspondence analysis.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check taxonomy structure")
    p_validate.add_argument("taxonomy", help="taxonomy text file")
    p_validate.set_defaults(handler=_cmd_validate)

    p_rank = sub.add_parser("rank", help="taxonomic ranks, normalized ranks and strata")
    p_rank.add_argument("taxonomy", help="taxonomy text file")
    p_rank.add_argument("mappings", help="researcher_id,taxon_path CSV")
    p_rank.add_argument(
        "--no-strict",
        action="store_true",
        help="warn instead of failing on taxons missing from the taxonomy",
    )
    p_rank.add_argument("--format", choices=("csv", "json"), default="csv")
    p_rank.set_defaults(handler=_cmd_rank)

    p_strat = sub.add_parser("stratify", help="least-squares stratification of a criteria table")
    p_strat.add_argument("criteria", help="id,<criterion>,... score CSV")
    p_strat.add_argument("--k", type=int, default=3, help="number of strata (default 3)")
    p_strat.add_argument("--restarts", type=int, default=20, help="restart count (default 20)")
    p_strat.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p_strat.add_argument(
        "--normalize",
        action="store_true",
        help="min-max rescale each criterion onto 0..100 first",
    )
    p_strat.add_argument(
        "--compare-pca",
        action="store_true",
        help="also report the principal-component aggregation of the same table",
    )
    p_strat.add_argument("--format", choices=("csv", "json"), default="csv")
    p_strat.set_defaults(handler=_cmd_stratify)

    p_ca = sub.add_parser("ca", help="correspondence analysis of a contingency table")
    p_ca.add_argument("table", help="id,<category>,... count CSV ('+' prefix = supplementary row)")
    p_ca.add_argument(
        "--axes",
        type=_parse_axes,
        default=None,
        help="factorial plane to report/plot, e.g. 1,2",
    )
    p_ca.add_argument("--svg", default=None, metavar="PATH", help="write a plane plot to PATH")
    p_ca.add_argument("--format", choices=("csv", "json"), default="csv")
    p_ca.set_defaults(handler=_cmd_ca)

    p_corr = sub.add_parser("corr", help="correlation matrix of criterion columns")
    p_corr.add_argument("criteria", nargs="+", help="one or more criteria CSVs with matching ids")
    p_corr.add_argument("--format", choices=("csv", "json"), default="csv")
    p_corr.set_defaults(handler=_cmd_corr)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except UnknownTaxon as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_UNKNOWN_TAXON
    except BadK as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_K
    except ZeroMarginal as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ZERO_MARGINAL
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TaxostratError as exc:  # any remaining library error is a data problem
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
