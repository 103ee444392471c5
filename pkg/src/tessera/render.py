"""Deterministic SVG output: 2-D tilings, 1-D barcodes, digit-point
clouds with depth-coded disks, decoration curves, and digit paths.

Formatting is fixed at 9 significant digits with no exponent notation,
element order follows tile order, and nothing timestamped goes into the
document, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field
from decimal import Decimal

from .engine import Tiling, path as expansion_path, placed_interval, placed_polygon
from .geometry import Similarity, Polyline

DEFAULT_PALETTE = (
    "#4878cf", "#d65f5f", "#6acc65", "#b47cc7", "#c4ad66",
    "#77bedb", "#ee854a", "#8c613c", "#dc7ec0", "#797979",
)

POINT_PALETTE = (
    "#c62828", "#ef6c00", "#f9a825", "#558b2f", "#00838f",
    "#1565c0", "#4527a0", "#ad1457", "#4e342e", "#37474f",
)


@dataclass
class Style:
    palette: tuple = DEFAULT_PALETTE
    point_palette: tuple = POINT_PALETTE
    stroke_width: float = 0.8
    radius_schedule: tuple = (14.0, 10.0, 7.0, 5.0, 3.5, 2.5, 1.8, 1.3, 0.9, 0.6)
    canvas_width: float = 800.0
    canvas_height: float = 800.0
    margin: float = 0.05

    def __post_init__(self):
        if not self.palette:
            raise ValueError("palette must be non-empty")
        rs = tuple(self.radius_schedule)
        if any(b >= a for a, b in zip(rs, rs[1:])):
            raise ValueError("radius schedule must be strictly decreasing")


def fmt(x: float) -> str:
    """Fixed decimal with 9 significant digits, no exponent."""
    if x == 0 or abs(x) < 1e-12:
        return "0"
    s = format(Decimal(f"{x:.9g}").normalize(), "f")
    return s


class _Fit:
    """Uniform scale-to-fit with margin; y axis flipped to screen."""

    def __init__(self, bbox, style: Style):
        x0, y0, x1, y1 = bbox
        dx = max(x1 - x0, 1e-12)
        dy = max(y1 - y0, 1e-12)
        w = style.canvas_width
        h = style.canvas_height
        usable_w = w * (1 - 2 * style.margin)
        usable_h = h * (1 - 2 * style.margin)
        self.scale = min(usable_w / dx, usable_h / dy)
        self.ox = (w - self.scale * dx) / 2 - self.scale * x0
        self.oy = (h - self.scale * dy) / 2 + self.scale * y1
        self.h = h

    def pt(self, z: complex):
        return (self.ox + self.scale * z.real, self.oy - self.scale * z.imag)


def _svg_open(style: Style):
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(style.canvas_width)}" '
        f'height="{fmt(style.canvas_height)}" '
        f'viewBox="0 0 {fmt(style.canvas_width)} {fmt(style.canvas_height)}">',
    ]


def _path_d(fit, vertices, close=True):
    parts = []
    for k, v in enumerate(vertices):
        x, y = fit.pt(v)
        parts.append(f"{'M' if k == 0 else 'L'} {fmt(x)} {fmt(y)}")
    if close:
        parts.append("Z")
    return " ".join(parts)


def _tiling_polys(t: Tiling):
    return [placed_polygon(t.rule, tile) for tile in t.tiles]


def _bbox_of(points):
    xs = [p.real for p in points]
    ys = [p.imag for p in points]
    return min(xs), min(ys), max(xs), max(ys)


def render_tiling(t: Tiling, style: Style = None) -> str:
    """Filled polygons, one path element per tile, colored by type."""
    style = style or Style()
    if t.rule.dimension != 1:
        polys = _tiling_polys(t)
    else:
        raise ValueError("1-D tiling: use render_barcode")
    bbox = _bbox_of([v for p in polys for v in p.vertices])
    fit = _Fit(bbox, style)
    out = _svg_open(style)
    for tile, poly in zip(t.tiles, polys):
        color = style.palette[tile.type_id % len(style.palette)]
        out.append(
            f'<path d="{_path_d(fit, poly.vertices)}" fill="{color}" '
            f'stroke="#333333" stroke-width="{fmt(style.stroke_width)}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_barcode(t: Tiling, style: Style = None) -> str:
    """1-D decomposition as vertical bands, widths proportional to the
    interval lengths, colored by type."""
    style = style or Style()
    if t.rule.dimension != 1:
        raise ValueError("render_barcode needs a 1-D tiling")
    ivs = [placed_interval(t.rule, tile) for tile in t.tiles]
    lo = min(a for a, _ in ivs)
    hi = max(b for _, b in ivs)
    w = style.canvas_width
    h = style.canvas_height
    mx = w * style.margin
    scale = (w - 2 * mx) / max(hi - lo, 1e-12)
    y0 = h * style.margin
    y1 = h * (1 - style.margin)
    out = _svg_open(style)
    for tile, (a, b) in zip(t.tiles, ivs):
        color = style.palette[tile.type_id % len(style.palette)]
        xa = mx + scale * (a - lo)
        xb = mx + scale * (b - lo)
        out.append(
            f'<rect x="{fmt(xa)}" y="{fmt(y0)}" width="{fmt(xb - xa)}" '
            f'height="{fmt(y1 - y0)}" fill="{color}" stroke="#333333" '
            f'stroke-width="{fmt(min(style.stroke_width, 0.3))}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_points(expansions, style: Style = None) -> str:
    """Digit expansions as disks, radius and color coded by digit count,
    deepest drawn first so shallow disks overlay."""
    style = style or Style()
    if not expansions:
        raise ValueError("no expansions to render")
    pts = [e.value for e in expansions]
    fit = _Fit(_bbox_of(pts), style)
    order = sorted(range(len(expansions)), key=lambda i: -len(expansions[i].steps))
    out = _svg_open(style)
    rs = style.radius_schedule
    for i in order:
        e = expansions[i]
        depth = len(e.steps)
        r = rs[min(depth - 1, len(rs) - 1)]
        color = style.point_palette[(depth - 1) % len(style.point_palette)]
        x, y = fit.pt(e.value)
        out.append(f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="{fmt(r)}" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_decorations(t: Tiling, style: Style = None, curves_only=False,
                       pinwheel=1) -> str:
    """Decoration polylines carried by the tiles; optionally composed with
    pinwheel rotated copies (powers of u) at render time.  curves_only
    suppresses the faint tile outlines."""
    style = style or Style()
    rule = t.rule
    if all(not rule.tile_types[tile.type_id].decorations for tile in t.tiles):
        warnings.warn(f"rule {rule.name} declares no decorations")
    r = rule.multiplier_value()
    m = rule.rotation_order_m
    copies = [Similarity(rotation_power=k) for k in range(max(1, pinwheel))]
    outlines = []
    curves = []
    for rot in copies:
        for tile in t.tiles:
            tt = rule.tile_types[tile.type_id]
            tr = rot.compose(tile.transform, r, m)
            if tt.shape is not None:
                outlines.append(tt.shape.transformed(tr, r, m))
            for dec in tt.decorations:
                curves.append(dec.transformed(tr, r, m))
    pts = [v for p in outlines for v in p.vertices] + [v for c in curves for v in c.vertices]
    fit = _Fit(_bbox_of(pts), style)
    out = _svg_open(style)
    if not curves_only:
        for poly in outlines:
            out.append(
                f'<path d="{_path_d(fit, poly.vertices)}" fill="none" '
                f'stroke="#cccccc" stroke-width="{fmt(style.stroke_width * 0.5)}"/>'
            )
    for c in curves:
        out.append(
            f'<path d="{_path_d(fit, c.vertices, close=False)}" fill="none" '
            f'stroke="#1a1a1a" stroke-width="{fmt(style.stroke_width)}" '
            f'stroke-linecap="round"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_path(p: Polyline, context: Tiling = None, style: Style = None) -> str:
    """A digit path overlaid on a light rendering of the context tiling."""
    style = style or Style()
    polys = _tiling_polys(context) if context is not None else []
    pts = list(p.vertices) + [v for poly in polys for v in poly.vertices]
    fit = _Fit(_bbox_of(pts), style)
    out = _svg_open(style)
    for poly in polys:
        out.append(
            f'<path d="{_path_d(fit, poly.vertices)}" fill="#f2f2f2" '
            f'stroke="#cccccc" stroke-width="{fmt(style.stroke_width * 0.5)}"/>'
        )
    if p.degenerate:
        x, y = fit.pt(p.vertices[0])
        out.append(f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="4" fill="#c62828"/>')
    else:
        out.append(
            f'<path d="{_path_d(fit, p.vertices, close=False)}" fill="none" '
            f'stroke="#c62828" stroke-width="{fmt(style.stroke_width * 2)}" '
            f'stroke-linejoin="round"/>'
        )
        x0, y0 = fit.pt(p.vertices[0])
        x1, y1 = fit.pt(p.vertices[-1])
        out.append(f'<circle cx="{fmt(x0)}" cy="{fmt(y0)}" r="3" fill="#1565c0"/>')
        out.append(f'<circle cx="{fmt(x1)}" cy="{fmt(y1)}" r="3" fill="#c62828"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
