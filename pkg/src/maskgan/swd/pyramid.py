"""Laplacian pyramid with the classic 5-tap binomial kernel."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

BINOMIAL5 = np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0


@dataclass
class PyramidLevel:
    resolution: int
    band: np.ndarray  # (R, R, C) detail image, or the low-pass residual
    is_residual: bool


def _blur(image: np.ndarray) -> np.ndarray:
    out = ndimage.correlate1d(image, BINOMIAL5, axis=0, mode="nearest")
    return ndimage.correlate1d(out, BINOMIAL5, axis=1, mode="nearest")


def _reduce(image: np.ndarray) -> np.ndarray:
    return _blur(image)[::2, ::2]


def _expand_axis(x: np.ndarray, axis: int) -> np.ndarray:
    # Polyphase form of zero-insertion followed by the doubled binomial
    # kernel: even taps [1, 6, 1]/8, odd taps [4, 4]/8, edge-replicated.
    x = np.moveaxis(x, axis, 0)
    padded = np.pad(x, ((1, 1),) + ((0, 0),) * (x.ndim - 1), mode="edge")
    even = (padded[:-2] + 6.0 * padded[1:-1] + padded[2:]) / 8.0
    odd = (padded[1:-1] + padded[2:]) / 2.0
    out = np.empty((2 * x.shape[0],) + x.shape[1:], dtype=x.dtype)
    out[0::2] = even
    out[1::2] = odd
    return np.moveaxis(out, 0, axis)


def _expand(image: np.ndarray) -> np.ndarray:
    return _expand_axis(_expand_axis(image, 0), 1)


def _check_square_power_of_two(image: np.ndarray) -> int:
    if image.ndim != 3 or image.shape[0] != image.shape[1]:
        raise ValueError(f"expected a square (R, R, C) image, got {image.shape}")
    r = image.shape[0]
    if r < 2 or r & (r - 1) != 0:
        raise ValueError(f"image resolution must be a power of two, got {r}")
    return r


def laplacian_pyramid(image: np.ndarray, min_resolution: int) -> list[PyramidLevel]:
    """Decompose an image into band-pass levels plus a low-pass residual.

    Levels run from the input resolution down to ``min_resolution``; the
    coarsest level stores the residual. Collapse reconstructs the input.
    """
    resolution = _check_square_power_of_two(image)
    if min_resolution > resolution:
        raise ValueError(
            f"min_resolution {min_resolution} exceeds image resolution {resolution}"
        )
    if min_resolution < 1 or min_resolution & (min_resolution - 1) != 0:
        raise ValueError(f"min_resolution must be a power of two, got {min_resolution}")

    g = np.asarray(image, dtype=np.float64)
    levels = []
    while g.shape[0] > min_resolution:
        reduced = _reduce(g)
        levels.append(
            PyramidLevel(resolution=g.shape[0], band=g - _expand(reduced), is_residual=False)
        )
        g = reduced
    levels.append(PyramidLevel(resolution=min_resolution, band=g, is_residual=True))
    return levels


def collapse_pyramid(levels: list[PyramidLevel]) -> np.ndarray:
    """Reconstruct the source image by upsample-and-add from the coarsest
    level."""
    if not levels or not levels[-1].is_residual:
        raise ValueError("pyramid must end with its low-pass residual")
    g = levels[-1].band
    for level in reversed(levels[:-1]):
        g = level.band + _expand(g)
    return g
