"""Region boundary tracing and mask/shape agreement scoring."""

from __future__ import annotations

import numpy as np
from scipy import ndimage


def region_outline(region: np.ndarray) -> np.ndarray:
    """Inner boundary of a boolean region: region pixels with a background
    4-neighbor. Pixels on the array border count as boundary."""
    region = np.asarray(region, dtype=bool)
    padded = np.pad(region, 1, mode="constant", constant_values=False)
    interior = (
        padded[:-2, 1:-1]
        & padded[2:, 1:-1]
        & padded[1:-1, :-2]
        & padded[1:-1, 2:]
    )
    return region & ~interior


def segment_foreground(image: np.ndarray, threshold: float = 0.25) -> np.ndarray:
    """Foreground of an image in [-1, 1]: pixels far from the border's
    median color. Single-pixel speckle is removed with a binary opening."""
    image = np.asarray(image, dtype=np.float64)
    border = np.concatenate(
        [image[0, :], image[-1, :], image[1:-1, 0], image[1:-1, -1]], axis=0
    )
    background = np.median(border, axis=0)
    distance = np.linalg.norm(image - background, axis=-1)
    foreground = distance > threshold
    return ndimage.binary_opening(foreground, structure=np.ones((2, 2), dtype=bool))


def boundary_overlap(mask: np.ndarray, image: np.ndarray, tolerance: int = 1) -> float:
    """Fraction of the image's traced shape boundary lying on (or within
    `tolerance` Chebyshev pixels of) the input mask. 0.0 when no shape is
    found."""
    mask = np.asarray(mask, dtype=bool)
    outline = region_outline(segment_foreground(image))
    total = int(outline.sum())
    if total == 0:
        return 0.0
    near_mask = ndimage.binary_dilation(
        mask, structure=np.ones((3, 3), dtype=bool), iterations=tolerance
    )
    return float(np.logical_and(outline, near_mask).sum() / total)
