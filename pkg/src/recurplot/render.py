"""Raster output of recurrence matrices as PNG byte buffers.

Orientation is fixed: matrix cell (0, 0) lands at the bottom-left pixel
block, time increasing rightward and upward. Encoding is 8-bit RGB with no
ancillary chunks, so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from PIL import Image

from .errors import ImageTooLarge
from .recurrence import DistanceMatrix, OverlayMatrix, RecurrenceMatrix

RGB = tuple[int, int, int]

BLACK: RGB = (0, 0, 0)
WHITE: RGB = (255, 255, 255)

PALETTES: dict[str, tuple[RGB, ...]] = {
    # cool (small distance) to warm (large distance)
    "thermal": ((0, 0, 255), (0, 255, 255), (0, 255, 0),
                (255, 255, 0), (255, 0, 0)),
    "grayscale": ((0, 0, 0), (255, 255, 255)),
}


@dataclass(frozen=True)
class RenderOptions:
    cell_pixels: int = 1
    colormap: str = "thermal"
    color_a: RGB = (0, 0, 255)
    color_b: RGB = (255, 0, 0)
    color_both: RGB = (128, 0, 128)
    background: RGB = (255, 255, 255)
    max_pixels: int = 64_000_000

    def __post_init__(self):
        if self.cell_pixels < 1:
            raise ValueError("cell_pixels must be >= 1")
        if self.max_pixels < 1:
            raise ValueError("max_pixels must be >= 1")

    def palette(self) -> tuple[RGB, ...]:
        try:
            anchors = PALETTES[self.colormap]
        except KeyError:
            raise ValueError(
                f"unknown colormap {self.colormap!r}; "
                f"available: {sorted(PALETTES)}") from None
        if len(anchors) < 2:
            raise ValueError("a palette needs at least 2 anchor colors")
        return anchors


def _encode(cell_colors: np.ndarray, options: RenderOptions) -> bytes:
    """Lay out cell colors bottom-left first and encode as PNG."""
    m = cell_colors.shape[0]
    side = m * options.cell_pixels
    if side * side > options.max_pixels:
        raise ImageTooLarge(
            f"{side}x{side} pixels exceeds the budget of {options.max_pixels}")
    # cell (i, j) -> pixel block at column i, row (m - 1 - j)
    pixels = np.flipud(cell_colors.transpose(1, 0, 2))
    if options.cell_pixels > 1:
        pixels = pixels.repeat(options.cell_pixels, axis=0)
        pixels = pixels.repeat(options.cell_pixels, axis=1)
    image = Image.fromarray(np.ascontiguousarray(pixels), mode="RGB")
    buffer = io.BytesIO()
    image.save(buffer, format="PNG")
    return buffer.getvalue()


def render_binary(rp: RecurrenceMatrix, options: RenderOptions = RenderOptions()) -> bytes:
    """Black cell per recurrence, white otherwise."""
    lut = np.array([WHITE, BLACK], dtype=np.uint8)
    return _encode(lut[rp.to_array()], options)


def render_distance(dm: DistanceMatrix, options: RenderOptions = RenderOptions()) -> bytes:
    """Distances mapped linearly from [0, max] onto the palette anchors.

    A constant-zero matrix renders entirely in the first anchor color.
    """
    anchors = np.array(options.palette(), dtype=np.float64)
    peak = dm.max()
    if peak > 0:
        t = dm.values / peak
    else:
        t = np.zeros_like(dm.values)
    stops = np.linspace(0.0, 1.0, len(anchors))
    channels = [np.interp(t, stops, anchors[:, ch]) for ch in range(3)]
    colors = np.rint(np.stack(channels, axis=-1)).astype(np.uint8)
    return _encode(colors, options)


def render_overlay(ov: OverlayMatrix, options: RenderOptions = RenderOptions()) -> bytes:
    """Categorical overlay colors: a, b, both, or background."""
    lut = np.array(
        [options.background, options.color_a, options.color_b, options.color_both],
        dtype=np.uint8)
    return _encode(lut[ov.cells], options)


def decode_png(data: bytes) -> np.ndarray:
    """PNG bytes to an (rows, cols, 3) uint8 array (used by tests and docs)."""
    with Image.open(io.BytesIO(data)) as image:
        return np.asarray(image.convert("RGB"))
