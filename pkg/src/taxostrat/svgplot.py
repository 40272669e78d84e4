"""Hand-emitted deterministic SVG scatter plots (no plotting dependency).

Output depends only on the input points and labels: fixed canvas, fixed
formatting of every coordinate, no timestamps or generator metadata, so the
same call always produces byte-identical markup.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .ca import CaModel, ContingencyTable, plane_inertia, project_supplementary

__all__ = ["PlotPoint", "scatter_svg", "ca_plane_svg"]

_WIDTH, _HEIGHT, _MARGIN = 800, 600, 70

_STYLES = {
    "row": ("#1f6fb4", "circle"),
    "col": ("#b42318", "square"),
    "sup": ("#5f5f5f", "diamond"),
}


@dataclass(frozen=True)
class PlotPoint:
    """One labelled marker: ``kind`` selects the marker style (row/col/sup)."""

    label: str
    x: float
    y: float
    kind: str = "row"


def _marker(kind: str, px: float, py: float) -> str:
    colour, shape = _STYLES[kind]
    if shape == "circle":
        return f'<circle cx="{px:.2f}" cy="{py:.2f}" r="4" fill="{colour}"/>'
    if shape == "square":
        return (
            f'<rect x="{px - 4:.2f}" y="{py - 4:.2f}" width="8" height="8" '
            f'fill="{colour}"/>'
        )
    points = f"{px:.2f},{py - 5:.2f} {px + 5:.2f},{py:.2f} {px:.2f},{py + 5:.2f} {px - 5:.2f},{py:.2f}"
    return f'<polygon points="{points}" fill="none" stroke="{colour}" stroke-width="1.5"/>'


def scatter_svg(
    points: Sequence[PlotPoint],
    *,
    x_label: str,
    y_label: str,
    title: str | None = None,
) -> str:
    """Render labelled points into a standalone 800x600 SVG document.

    The data window always contains the origin (the natural centre of a
    factorial plane) and pads the point extent by 8%.
    """
    xs = [p.x for p in points] + [0.0]
    ys = [p.y for p in points] + [0.0]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    x_pad = (x_hi - x_lo) * 0.08 or 1.0
    y_pad = (y_hi - y_lo) * 0.08 or 1.0
    x_lo, x_hi = x_lo - x_pad, x_hi + x_pad
    y_lo, y_hi = y_lo - y_pad, y_hi + y_pad

    def to_px(x: float) -> float:
        return _MARGIN + (x - x_lo) / (x_hi - x_lo) * (_WIDTH - 2 * _MARGIN)

    def to_py(y: float) -> float:
        return _HEIGHT - _MARGIN - (y - y_lo) / (y_hi - y_lo) * (_HEIGHT - 2 * _MARGIN)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_WIDTH - 2 * _MARGIN}" '
        f'height="{_HEIGHT - 2 * _MARGIN}" fill="none" stroke="#c0c0c0"/>',
    ]
    # origin cross of the factorial plane
    ox, oy = to_px(0.0), to_py(0.0)
    parts.append(
        f'<line x1="{ox:.2f}" y1="{_MARGIN}" x2="{ox:.2f}" y2="{_HEIGHT - _MARGIN}" '
        'stroke="#e0e0e0"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN}" y1="{oy:.2f}" x2="{_WIDTH - _MARGIN}" y2="{oy:.2f}" '
        'stroke="#e0e0e0"/>'
    )
    if title:
        parts.append(
            f'<text x="{_WIDTH / 2:.2f}" y="{_MARGIN / 2:.2f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="16">{escape(title)}</text>'
        )
    for point in points:
        px, py = to_px(point.x), to_py(point.y)
        parts.append(_marker(point.kind, px, py))
        style = ' font-style="italic"' if point.kind == "sup" else ""
        parts.append(
            f'<text x="{px + 6:.2f}" y="{py - 6:.2f}" font-family="sans-serif" '
            f'font-size="11"{style}>{escape(point.label)}</text>'
        )
    parts.append(
        f'<text x="{_WIDTH / 2:.2f}" y="{_HEIGHT - _MARGIN / 3:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{escape(x_label)}</text>'
    )
    parts.append(
        f'<text x="{_MARGIN / 3:.2f}" y="{_HEIGHT / 2:.2f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 {_MARGIN / 3:.2f} {_HEIGHT / 2:.2f})">{escape(y_label)}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def ca_plane_svg(
    model: CaModel,
    table: ContingencyTable | None = None,
    axes: tuple[int, int] = (1, 2),
) -> str:
    """Symmetric-map plot of a factorial plane.

    Active rows are circles, active columns squares; supplementary entries
    of ``table`` (if given) are projected and drawn as open diamonds with
    italic labels.  Axis captions carry each axis's inertia share and the
    title the plane total.
    """
    share = plane_inertia(model, axes)
    a, b = axes
    ia, ib = a - 1, b - 1
    points = [
        PlotPoint(label, model.row_coords[i, ia], model.row_coords[i, ib], "row")
        for i, label in enumerate(model.row_ids)
    ]
    points += [
        PlotPoint(label, model.col_coords[j, ia], model.col_coords[j, ib], "col")
        for j, label in enumerate(model.col_ids)
    ]
    if table is not None:
        for label, vector in table.supplementary_rows:
            coords = project_supplementary(model, vector, side="row")
            points.append(PlotPoint(label, coords[ia], coords[ib], "sup"))
        for label, vector in table.supplementary_cols:
            coords = project_supplementary(model, vector, side="col")
            points.append(PlotPoint(label, coords[ia], coords[ib], "sup"))
    return scatter_svg(
        points,
        x_label=f"Axis {a} ({model.inertia_shares[ia] * 100:.1f}% of inertia)",
        y_label=f"Axis {b} ({model.inertia_shares[ib] * 100:.1f}% of inertia)",
        title=f"Factorial plane ({a},{b}): {share * 100:.1f}% of inertia",
    )
