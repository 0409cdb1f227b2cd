"""Deterministic ellipse-face corpus: quantized mask shapes, rich appearances.

Mask geometry is drawn from a fixed 16-entry table so every mask value
recurs under many (palette color, texture, background) appearances; that
makes one-mask-to-many-images behaviour measurable on a desk machine.
"""

from __future__ import annotations

import numpy as np

from .boundary import region_outline
from .landmarks import line_pixels

# 8 saturated face colors (uint8 RGB).
PALETTE = np.array(
    [
        [220, 60, 50],  # red
        [235, 140, 40],  # orange
        [230, 210, 60],  # yellow
        [70, 180, 70],  # green
        [60, 190, 200],  # cyan
        [60, 90, 210],  # blue
        [140, 70, 200],  # purple
        [215, 80, 170],  # magenta
    ],
    dtype=np.uint8,
)

# 16 background gray shades (uint8).
BACKGROUNDS = np.round(np.linspace(16, 240, 16)).astype(np.uint8)

TEXTURES = ("plain", "stripes", "dots")

# (palette colors, texture variants, background shades)
APPEARANCE_COUNTS = (len(PALETTE), len(TEXTURES), len(BACKGROUNDS))

# Quantized ellipse geometry: (cx, cy, rx, ry) in unit coordinates. Parameter
# spacing is 1/8 so all 16 shapes stay distinct even on an 8x8 grid.
_CENTERS = (0.4375, 0.5625)
_RADII = (0.25, 0.375)
GEOMETRY = [
    (cx, cy, rx, ry)
    for cx in _CENTERS
    for cy in _CENTERS
    for rx in _RADII
    for ry in _RADII
]
MASK_CLASS_COUNT = len(GEOMETRY)

_MIN_RESOLUTION = 8
_MAX_RESOLUTION = 128


def _ellipse_region(resolution: int, cx: float, cy: float, rx: float, ry: float) -> np.ndarray:
    centers = (np.arange(resolution) + 0.5) / resolution
    dx = (centers[None, :] - cx) / rx
    dy = (centers[:, None] - cy) / ry
    return dx * dx + dy * dy <= 1.0


def _to_pixel(x: float, y: float, resolution: int) -> tuple[int, int]:
    col = min(max(int(x * resolution), 0), resolution - 1)
    row = min(max(int(y * resolution), 0), resolution - 1)
    return row, col


def _draw_polyline(mask: np.ndarray, points: list[tuple[int, int]]) -> None:
    for (r0, c0), (r1, c1) in zip(points[:-1], points[1:]):
        for r, c in line_pixels(r0, c0, r1, c1):
            mask[r, c] = 1


def synthetic_mask(shape_index: int, resolution: int) -> np.ndarray:
    """Rasterize mask class `shape_index`: ellipse outline, eye arcs, mouth."""
    cx, cy, rx, ry = GEOMETRY[shape_index]
    region = _ellipse_region(resolution, cx, cy, rx, ry)
    mask = region_outline(region).astype(np.uint8)

    eye_y = cy - 0.35 * ry
    eye_dx = 0.45 * rx
    eye_w = 0.15 * rx
    bend = 0.1 * ry
    for ex in (cx - eye_dx, cx + eye_dx):
        pts = [
            _to_pixel(ex - eye_w, eye_y, resolution),
            _to_pixel(ex, eye_y + bend, resolution),
            _to_pixel(ex + eye_w, eye_y, resolution),
        ]
        _draw_polyline(mask, pts)

    mouth_y = cy + 0.5 * ry
    mouth_w = 0.4 * rx
    _draw_polyline(
        mask,
        [
            _to_pixel(cx - mouth_w, mouth_y, resolution),
            _to_pixel(cx + mouth_w, mouth_y, resolution),
        ],
    )
    return mask


def _apply_texture(
    face: np.ndarray, region: np.ndarray, texture: str, resolution: int
) -> np.ndarray:
    if texture == "plain":
        return face
    period = max(2, resolution // 8)
    rows = np.arange(resolution)
    if texture == "stripes":
        banded = (rows // period) % 2 == 1
        accent = banded[:, None] & region
    else:  # dots
        on = rows % (2 * period) == period
        accent = (on[:, None] & on[None, :]) & region
    shaded = face.copy()
    shaded[accent] = (face[accent].astype(np.uint16) * 6 // 10).astype(np.uint8)
    return shaded


def make_synthetic_pair(seed: int, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    """Generate one deterministic (mask, image) pair for the given seed.

    Returns (mask uint8 {0,1} of shape (R, R), image float32 in [-1, 1] of
    shape (R, R, 3)). Image values sit exactly on the 8-bit grid so PNG
    round-trips are lossless.
    """
    if not (
        _MIN_RESOLUTION <= resolution <= _MAX_RESOLUTION
        and resolution & (resolution - 1) == 0
    ):
        raise ValueError(
            f"resolution must be a power of two in [{_MIN_RESOLUTION}, {_MAX_RESOLUTION}], "
            f"got {resolution}"
        )

    rng = np.random.default_rng(seed)
    shape_index = int(rng.integers(MASK_CLASS_COUNT))
    color_index = int(rng.integers(len(PALETTE)))
    texture = TEXTURES[int(rng.integers(len(TEXTURES)))]
    background = BACKGROUNDS[int(rng.integers(len(BACKGROUNDS)))]

    cx, cy, rx, ry = GEOMETRY[shape_index]
    region = _ellipse_region(resolution, cx, cy, rx, ry)
    mask = synthetic_mask(shape_index, resolution)

    pixels = np.empty((resolution, resolution, 3), dtype=np.uint8)
    pixels[:] = background
    pixels[region] = PALETTE[color_index]
    pixels = _apply_texture(pixels, region, texture, resolution)

    image = (pixels.astype(np.float64) / 127.5 - 1.0).astype(np.float32)
    return mask, image


def synthetic_interior(shape_index: int, resolution: int) -> np.ndarray:
    """Boolean interior of one mask class: the filled ellipse minus its
    outline. The analytic region used when measuring fill-color statistics
    of generated images."""
    cx, cy, rx, ry = GEOMETRY[shape_index]
    region = _ellipse_region(resolution, cx, cy, rx, ry)
    return region & ~region_outline(region)


def palette_color_std() -> float:
    """Per-channel std of the palette in [-1, 1] units, averaged over channels.

    Ground-truth color spread of the corpus; diversity scores of trained
    models are compared against a fraction of this value.
    """
    colors = PALETTE.astype(np.float64) / 127.5 - 1.0
    return float(colors.std(axis=0).mean())
