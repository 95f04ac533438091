"""Deterministic pixel-bar rendering.

Embeddings become grid columns of colored cells: a diverging red/blue scheme
segmented into discrete classes over a symmetric global domain, rasterized to
PNG by a byte-stable encoder.  The zoom context bar renders each interval's
temporal granularity as a height-coded rectangle, always in time order.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from graphpix.dyngraph import IntervalId

# ColorBrewer RdBu anchors, dark red -> neutral -> dark blue
RDBU_ANCHORS = (
    "#67001f", "#b2182b", "#d6604d", "#f4a582", "#fddbc7", "#f7f7f7",
    "#d1e5f0", "#92c5de", "#4393c3", "#2166ac", "#053061",
)
NEUTRAL_HEX = "#f7f7f7"
FRAME_GREY = (128, 128, 128)
ZOOM_FILL = (67, 147, 195)  # mid blue from the anchor ramp


class CapacityError(ValueError):
    """More pixel-bars than horizontal pixels: coarsen temporal intervals."""

    def __init__(self, columns: int, screen_width_px: int):
        self.columns = columns
        self.screen_width_px = screen_width_px
        super().__init__(
            f"coarsen temporal intervals: {columns} pixel-bars exceed {screen_width_px} px"
        )


def _hex_to_rgb(hex_color: str) -> tuple[int, int, int]:
    h = hex_color.lstrip("#")
    return (int(h[0:2], 16), int(h[2:4], 16), int(h[4:6], 16))


def _ramp(position: float) -> tuple[int, int, int]:
    """Linear interpolation along the anchor ramp, position in [0, 1]."""
    x = min(max(position, 0.0), 1.0) * (len(RDBU_ANCHORS) - 1)
    i = min(int(x), len(RDBU_ANCHORS) - 2)
    frac = x - i
    a = _hex_to_rgb(RDBU_ANCHORS[i])
    b = _hex_to_rgb(RDBU_ANCHORS[i + 1])
    return tuple(round(a[c] + (b[c] - a[c]) * frac) for c in range(3))


@dataclass
class ColorSpec:
    """Diverging segmented mapping over the symmetric domain [-m, +m].

    One segment per side by default (two distinct color classes).  Class ids
    run red-extreme .. red-boundary, blue-boundary .. blue-extreme; zero maps
    to the blue-side boundary class.  m == 0 collapses to a single neutral
    class.
    """

    domain_max: float
    segments_per_side: int = 1

    def __post_init__(self) -> None:
        if self.segments_per_side < 1:
            raise ValueError("segments_per_side must be >= 1")
        if self.domain_max < 0:
            raise ValueError("domain_max must be >= 0")

    @classmethod
    def from_values(cls, values: np.ndarray, segments_per_side: int = 1) -> "ColorSpec":
        values = np.asarray(values, dtype=np.float64)
        m = float(np.max(np.abs(values))) if values.size else 0.0
        return cls(domain_max=m, segments_per_side=segments_per_side)

    @property
    def n_classes(self) -> int:
        return 1 if self.domain_max == 0 else 2 * self.segments_per_side

    def palette(self) -> list[str]:
        if self.domain_max == 0:
            return [NEUTRAL_HEX]
        n = self.n_classes
        return ["#%02x%02x%02x" % _ramp((c + 0.5) / n) for c in range(n)]

    def palette_rgb(self) -> np.ndarray:
        return np.asarray([_hex_to_rgb(h) for h in self.palette()], dtype=np.uint8)


def colorize(value: float, spec: ColorSpec) -> int:
    """Class id of one value: sign selects the side, |value|/m the segment;
    out-of-domain values clamp to the extreme classes."""
    if not np.isfinite(value):
        raise ValueError("value must be finite")
    if spec.domain_max == 0:
        return 0
    s = spec.segments_per_side
    seg = min(int(abs(value) / spec.domain_max * s), s - 1)
    return (s - 1 - seg) if value < 0 else (s + seg)


def colorize_array(values: np.ndarray, spec: ColorSpec) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise ValueError("values must be finite")
    if spec.domain_max == 0:
        return np.zeros(values.shape, dtype=np.int64)
    s = spec.segments_per_side
    seg = np.minimum((np.abs(values) / spec.domain_max * s).astype(np.int64), s - 1)
    return np.where(values < 0, s - 1 - seg, s + seg)


def encode_png(rgb: np.ndarray) -> bytes:
    """Minimal 8-bit RGB PNG writer; fixed zlib settings keep output byte-stable."""
    rgb = np.asarray(rgb, dtype=np.uint8)
    height, width, _ = rgb.shape
    raw = b"".join(b"\x00" + rgb[y].tobytes() for y in range(height))

    def chunk(tag: bytes, data: bytes) -> bytes:
        body = tag + data
        return struct.pack(">I", len(data)) + body + struct.pack(">I", zlib.crc32(body))

    header = struct.pack(">IIBBBBB", width, height, 8, 2, 0, 0, 0)
    return (
        b"\x89PNG\r\n\x1a\n"
        + chunk(b"IHDR", header)
        + chunk(b"IDAT", zlib.compress(raw, 9))
        + chunk(b"IEND", b"")
    )


@dataclass
class PixelImage:
    """Rendered pixel matrix: class ids in display order plus the raster."""

    width_px: int
    height_px: int
    classes: np.ndarray  # (columns, d) class ids, display order
    bar_width_px: int
    cell_height_px: int
    palette: list[str]
    png: bytes
    frames: list[tuple[int, int]] = field(default_factory=list)


def render_pixels(
    raw_columns: np.ndarray,
    row_perm: np.ndarray,
    col_perm: np.ndarray,
    spec: ColorSpec,
    screen_width_px: int,
    frames: Optional[Sequence[tuple[int, int]]] = None,
    cell_height_px: int = 2,
) -> PixelImage:
    """Rasterize columns (one embedding each) into the pixel-bar matrix.

    Column i of the output is raw_columns[col_perm[i]] with rows ordered by
    row_perm.  Raises CapacityError when the bars outnumber screen pixels
    (minimum bar width is one pixel).
    """
    raw_columns = np.asarray(raw_columns, dtype=np.float64)
    n_cols, d = raw_columns.shape
    if n_cols > screen_width_px:
        raise CapacityError(n_cols, screen_width_px)
    display = raw_columns[np.asarray(col_perm)][:, np.asarray(row_perm)]
    classes = colorize_array(display, spec)

    bar_w = max(1, screen_width_px // n_cols)
    width = n_cols * bar_w
    height = d * cell_height_px
    rgb_rows = spec.palette_rgb()[classes]  # (cols, d, 3)
    img = np.repeat(np.repeat(rgb_rows.transpose(1, 0, 2), cell_height_px, axis=0), bar_w, axis=1)

    for (c0, c1) in frames or []:
        x0, x1 = c0 * bar_w, (c1 + 1) * bar_w - 1
        img[0, x0:x1 + 1] = FRAME_GREY
        img[height - 1, x0:x1 + 1] = FRAME_GREY
        img[:, x0] = FRAME_GREY
        img[:, x1] = FRAME_GREY

    return PixelImage(
        width_px=width,
        height_px=height,
        classes=classes,
        bar_width_px=bar_w,
        cell_height_px=cell_height_px,
        palette=spec.palette(),
        png=encode_png(img),
        frames=list(frames or []),
    )


def render_zoom_bar(
    intervals: Sequence[IntervalId],
    T: int,
    lmax: int,
    bar_width_px: int,
    height_px: int = 48,
) -> tuple[bytes, list[dict]]:
    """Height-coded granularity strip, one rectangle per bar in time order.

    Returns (png bytes, per-bar json rows {level, start, span, t0, t1, x, w, h}).
    """
    ordered = sorted(intervals, key=lambda iv: iv.t0())
    n = len(ordered)
    if n == 0:
        raise ValueError("empty view")
    width = n * bar_width_px
    img = np.full((height_px, width, 3), 255, dtype=np.uint8)
    rows = []
    for i, iv in enumerate(ordered):
        h = max(1, (height_px * (iv.level + 1)) // (lmax + 1))
        x = i * bar_width_px
        img[height_px - h:, x:x + bar_width_px] = ZOOM_FILL
        rows.append(
            {
                "level": iv.level,
                "start": iv.start,
                "span": iv.span(T),
                "t0": iv.t0(),
                "t1": iv.t1(T),
                "x": x,
                "w": bar_width_px,
                "h": h,
            }
        )
    return encode_png(img), rows
