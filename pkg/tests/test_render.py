"""Deterministic SVG rendering: byte stability, well-formed documents,
element counts, and canvas bounds."""

import re
import xml.etree.ElementTree as ET

import pytest

from tessera.engine import decompose, expansion_from_steps, expansions, path
from tessera.render import Style, fmt, render_barcode, render_decorations, \
    render_path, render_points, render_tiling
from tessera.rules import catalog

SVG_NS = "{http://www.w3.org/2000/svg}"


def parse(doc):
    return ET.fromstring(doc)


def all_coords(doc):
    return [float(x) for x in re.findall(r'-?\d+\.?\d*', doc)
            if re.match(r'-?\d', x)]


class TestFmt:
    def test_zero(self):
        assert fmt(0.0) == "0"
        assert fmt(1e-13) == "0"

    def test_no_exponent(self):
        assert "e" not in fmt(1234567.89)
        assert "E" not in fmt(0.000001234)

    def test_nine_significant_digits(self):
        assert fmt(1 / 3) == "0.333333333"

    def test_integers_stay_short(self):
        assert fmt(800.0) == "800"


class TestTiling:
    def test_one_path_per_tile(self):
        tiling = decompose(catalog("penrose"), 0, 4)
        doc = render_tiling(tiling)
        root = parse(doc)
        paths = root.findall(f"{SVG_NS}path")
        assert len(paths) == len(tiling.tiles)

    def test_byte_deterministic(self):
        tiling = decompose(catalog("ammann-chair"), 0, 5)
        assert render_tiling(tiling) == render_tiling(tiling)

    def test_coordinates_inside_canvas(self):
        style = Style()
        tiling = decompose(catalog("penrose"), 0, 4)
        root = parse(render_tiling(tiling, style))
        for p in root.findall(f"{SVG_NS}path"):
            for mx, my in re.findall(r"[ML] (-?[\d.]+) (-?[\d.]+)", p.get("d")):
                assert -1e-6 <= float(mx) <= style.canvas_width + 1e-6
                assert -1e-6 <= float(my) <= style.canvas_height + 1e-6

    def test_rejects_1d(self):
        tiling = decompose(catalog("silver-1d:11"), 0, 3)
        with pytest.raises(ValueError, match="barcode"):
            render_tiling(tiling)


class TestBarcode:
    def test_one_rect_per_tile(self):
        tiling = decompose(catalog("silver-1d:11"), 0, 10)
        root = parse(render_barcode(tiling))
        assert len(root.findall(f"{SVG_NS}rect")) == len(tiling.tiles)

    def test_depth_zero_single_band(self):
        tiling = decompose(catalog("silver-1d:11"), 0, 0)
        root = parse(render_barcode(tiling))
        assert len(root.findall(f"{SVG_NS}rect")) == 1

    def test_widths_proportional_to_lengths(self):
        tiling = decompose(catalog("silver-1d:11"), 0, 1)
        root = parse(render_barcode(tiling))
        widths = sorted(float(r.get("width")) for r in root.findall(f"{SVG_NS}rect"))
        phi = (1 + 5 ** 0.5) / 2
        assert widths[1] / widths[0] == pytest.approx(phi, rel=1e-6)

    def test_rejects_2d(self):
        tiling = decompose(catalog("penrose"), 0, 2)
        with pytest.raises(ValueError):
            render_barcode(tiling)


class TestPoints:
    def test_one_disk_per_expansion(self):
        es = expansions(catalog("penrose"), 0, 4)
        root = parse(render_points(es))
        assert len(root.findall(f"{SVG_NS}circle")) == len(es)

    def test_single_expansion(self):
        es = expansions(catalog("penrose"), 0, 1)[:1]
        root = parse(render_points(es))
        assert len(root.findall(f"{SVG_NS}circle")) == 1

    def test_deepest_drawn_first(self):
        rule = catalog("penrose")
        es = expansions(rule, 0, 1) + expansions(rule, 0, 3)
        root = parse(render_points(es))
        radii = [float(c.get("r")) for c in root.findall(f"{SVG_NS}circle")]
        # deep (small) disks first so the shallow (large) ones overlay
        assert radii == sorted(radii)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            render_points([])


class TestDecorations:
    def test_taylor_curves(self):
        tiling = decompose(catalog("taylor-trapezoid"), 0, 4)
        doc = render_decorations(tiling)
        root = parse(doc)
        # one outline and one curve per tile
        assert len(root.findall(f"{SVG_NS}path")) == 2 * len(tiling.tiles)

    def test_curves_only_drops_outlines(self):
        tiling = decompose(catalog("taylor-trapezoid"), 0, 3)
        root = parse(render_decorations(tiling, curves_only=True))
        assert len(root.findall(f"{SVG_NS}path")) == len(tiling.tiles)

    def test_pinwheel_copies(self):
        tiling = decompose(catalog("penrose"), 0, 3)
        a = parse(render_decorations(tiling, curves_only=True, pinwheel=1))
        b = parse(render_decorations(tiling, curves_only=True, pinwheel=4))
        assert len(b.findall(f"{SVG_NS}path")) == 4 * len(a.findall(f"{SVG_NS}path"))

    def test_undecorated_rule_warns(self):
        tiling = decompose(catalog("ammann-chair"), 0, 2)
        with pytest.warns(UserWarning, match="no decorations"):
            doc = render_decorations(tiling)
        parse(doc)


class TestPath:
    def test_path_over_context(self):
        rule = catalog("penrose")
        e = expansions(rule, 0, 4)[3]
        doc = render_path(path(e), decompose(rule, 0, 4))
        root = parse(doc)
        assert len(root.findall(f"{SVG_NS}circle")) == 2  # endpoint markers

    def test_degenerate_path_is_marked_point(self):
        rule = catalog("silver-1d:11")
        e = expansion_from_steps(rule, [(0, 0), (0, 0)])
        root = parse(render_path(path(e)))
        assert len(root.findall(f"{SVG_NS}circle")) == 1
        assert len(root.findall(f"{SVG_NS}path")) == 0

    def test_single_segment(self):
        rule = catalog("penrose")
        e = expansion_from_steps(rule, [(1, 0)])
        root = parse(render_path(path(e)))
        assert len(root.findall(f"{SVG_NS}path")) == 1


class TestStyle:
    def test_radius_schedule_must_decrease(self):
        with pytest.raises(ValueError):
            Style(radius_schedule=(3.0, 5.0))

    def test_palette_non_empty(self):
        with pytest.raises(ValueError):
            Style(palette=())

    def test_no_timestamps_in_output(self):
        tiling = decompose(catalog("penrose"), 0, 3)
        doc = render_tiling(tiling)
        assert "date" not in doc.lower()
        assert "time" not in doc.lower()
