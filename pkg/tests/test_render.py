"""Pixel rendering: color classes, PNG determinism, screen cap, zoom bar."""

from __future__ import annotations

import io

import numpy as np
import pytest
from PIL import Image

from graphpix.dyngraph import IntervalId
from graphpix.render import (
    CapacityError,
    ColorSpec,
    colorize,
    colorize_array,
    encode_png,
    render_pixels,
    render_zoom_bar,
)


class TestColorize:
    def test_two_class_signs(self):
        spec = ColorSpec(domain_max=1.0, segments_per_side=1)
        assert colorize(0.5, spec) == 1  # blue
        assert colorize(-0.5, spec) == 0  # red

    def test_zero_maps_to_blue_boundary(self):
        spec = ColorSpec(domain_max=1.0, segments_per_side=1)
        assert colorize(0.0, spec) == 1
        spec4 = ColorSpec(domain_max=1.0, segments_per_side=2)
        assert colorize(0.0, spec4) == 2  # first blue-side class of 4

    def test_clamping_beyond_domain(self):
        spec = ColorSpec(domain_max=1.0, segments_per_side=1)
        assert colorize(10.0, spec) == 1
        assert colorize(-10.0, spec) == 0
        spec4 = ColorSpec(domain_max=1.0, segments_per_side=2)
        assert colorize(10.0, spec4) == 3
        assert colorize(-10.0, spec4) == 0

    def test_segment_boundaries(self):
        spec = ColorSpec(domain_max=2.0, segments_per_side=2)
        assert colorize(0.5, spec) == 2
        assert colorize(1.5, spec) == 3
        assert colorize(-0.5, spec) == 1
        assert colorize(-1.5, spec) == 0

    def test_all_zero_display_single_neutral_class(self):
        spec = ColorSpec.from_values(np.zeros((3, 4)))
        assert spec.n_classes == 1
        assert spec.palette() == ["#f7f7f7"]
        assert colorize(0.0, spec) == 0

    def test_nonfinite_rejected(self):
        spec = ColorSpec(domain_max=1.0)
        with pytest.raises(ValueError):
            colorize(float("nan"), spec)

    def test_array_matches_scalar(self):
        rng = np.random.default_rng(0)
        values = rng.normal(size=(5, 7))
        spec = ColorSpec.from_values(values, segments_per_side=3)
        arr = colorize_array(values, spec)
        for i in range(5):
            for j in range(7):
                assert arr[i, j] == colorize(float(values[i, j]), spec)

    def test_palette_sides(self):
        spec = ColorSpec(domain_max=1.0, segments_per_side=1)
        red, blue = (tuple(c) for c in spec.palette_rgb())
        assert red[0] > red[2]  # red side has more red than blue
        assert blue[2] > blue[0]


class TestRenderPixels:
    def test_single_column_classes(self):
        raw = np.array([[1.0, -1.0, 0.0, 2.0]])
        spec = ColorSpec(domain_max=2.0, segments_per_side=1)
        image = render_pixels(raw, np.arange(4), np.arange(1), spec, screen_width_px=400)
        assert image.classes.tolist() == [[1, 0, 1, 1]]

    def test_byte_identical_rerender(self):
        rng = np.random.default_rng(4)
        raw = rng.normal(size=(20, 16))
        spec = ColorSpec.from_values(raw)
        a = render_pixels(raw, np.arange(16), np.arange(20), spec, 400)
        b = render_pixels(raw, np.arange(16), np.arange(20), spec, 400)
        assert a.png == b.png

    def test_cap_exceeded(self):
        raw = np.zeros((401, 4))
        spec = ColorSpec(domain_max=1.0)
        with pytest.raises(CapacityError, match="coarsen temporal intervals"):
            render_pixels(raw, np.arange(4), np.arange(401), spec, screen_width_px=400)

    def test_permutations_apply(self):
        raw = np.array([[1.0, -1.0], [-1.0, 1.0]])
        spec = ColorSpec(domain_max=1.0, segments_per_side=1)
        image = render_pixels(raw, np.array([1, 0]), np.array([1, 0]), spec, 100)
        # col 0 becomes raw[1] with rows flipped: [1, -1] -> [blue, red]
        assert image.classes.tolist() == [[1, 0], [0, 1]]

    def test_dimensions_and_bar_width(self):
        raw = np.zeros((10, 8))
        raw[0, 0] = 1.0
        spec = ColorSpec.from_values(raw)
        image = render_pixels(raw, np.arange(8), np.arange(10), spec, 400, cell_height_px=3)
        assert image.bar_width_px == 40
        assert image.width_px == 400
        assert image.height_px == 24
        assert image.classes.shape == (10, 8)

    def test_png_decodes_to_expected_pixels(self):
        raw = np.array([[1.0], [-1.0]])
        spec = ColorSpec(domain_max=1.0, segments_per_side=1)
        image = render_pixels(raw, np.arange(1), np.arange(2), spec, 2, cell_height_px=1)
        decoded = Image.open(io.BytesIO(image.png))
        assert decoded.size == (2, 1)
        px = np.asarray(decoded.convert("RGB"))
        blue, red = spec.palette_rgb()[1], spec.palette_rgb()[0]
        assert tuple(px[0, 0]) == tuple(blue)
        assert tuple(px[0, 1]) == tuple(red)

    def test_cluster_frames_drawn_grey(self):
        raw = np.ones((4, 4))
        spec = ColorSpec.from_values(raw)
        image = render_pixels(
            raw, np.arange(4), np.arange(4), spec, 8, frames=[(1, 2)], cell_height_px=2
        )
        decoded = np.asarray(Image.open(io.BytesIO(image.png)).convert("RGB"))
        bar_w = image.bar_width_px
        assert tuple(decoded[0, 1 * bar_w]) == (128, 128, 128)
        assert tuple(decoded[-1, 3 * bar_w - 1]) == (128, 128, 128)
        assert tuple(decoded[1, 0]) != (128, 128, 128)


class TestEncodePng:
    def test_roundtrip_via_pillow(self):
        rng = np.random.default_rng(1)
        rgb = rng.integers(0, 256, size=(5, 7, 3)).astype(np.uint8)
        decoded = np.asarray(Image.open(io.BytesIO(encode_png(rgb))).convert("RGB"))
        assert np.array_equal(decoded, rgb)


class TestZoomBar:
    def test_uniform_level0_minimum_height(self):
        intervals = [IntervalId(0, i) for i in range(4)]
        png, rows = render_zoom_bar(intervals, T=4, lmax=2, bar_width_px=10, height_px=48)
        assert all(r["h"] == 48 // 3 for r in rows)

    def test_level_proportionality(self):
        intervals = [IntervalId(3, 0), IntervalId(0, 8), IntervalId(0, 9)] + [
            IntervalId(1, s) for s in range(5, 8)
        ]
        png, rows = render_zoom_bar(intervals, T=16, lmax=3, bar_width_px=4, height_px=48)
        h_by_level = {r["level"]: r["h"] for r in rows}
        assert h_by_level[3] == 4 * h_by_level[0]

    def test_time_order_independent_of_input_order(self):
        forward = [IntervalId(1, 0), IntervalId(1, 1)]
        _, rows_fwd = render_zoom_bar(forward, T=4, lmax=2, bar_width_px=5)
        _, rows_rev = render_zoom_bar(forward[::-1], T=4, lmax=2, bar_width_px=5)
        assert rows_fwd == rows_rev
        assert [r["t0"] for r in rows_fwd] == [0, 2]

    def test_json_carries_interval_fields(self):
        _, rows = render_zoom_bar([IntervalId(2, 0)], T=3, lmax=2, bar_width_px=7)
        assert rows[0]["level"] == 2
        assert rows[0]["start"] == 0
        assert rows[0]["span"] == 3
