"""Sliced Wasserstein distance between equal-size descriptor sets."""

from __future__ import annotations

import numpy as np

from .patches import PatchDescriptorSet

DEFAULT_PROJECTIONS = 512


def projection_directions(dim: int, count: int, seed: int) -> np.ndarray:
    """`count` unit-length directions (i.i.d. normal, normalized), seeded."""
    rng = np.random.default_rng(seed)
    directions = rng.standard_normal((count, dim))
    norms = np.maximum(np.linalg.norm(directions, axis=1, keepdims=True), 1e-12)
    return directions / norms


def _as_array(dset) -> np.ndarray:
    if isinstance(dset, PatchDescriptorSet):
        return dset.descriptors
    return np.asarray(dset, dtype=np.float64)


def sliced_wasserstein(
    a,
    b,
    projections: int = DEFAULT_PROJECTIONS,
    seed: int = 0,
) -> float:
    """Mean 1-D Wasserstein distance over random unit projections.

    For each direction both sets are projected to scalars and sorted; the
    distance contribution is the mean absolute difference of the sorted
    sequences (exact 1-D optimal transport for equal-weight sets).
    Symmetric in (a, b) and zero for identical sets.
    """
    xa = _as_array(a)
    xb = _as_array(b)
    if xa.shape[0] != xb.shape[0]:
        raise ValueError(f"descriptor sets must match in size: {xa.shape[0]} vs {xb.shape[0]}")
    if xa.shape[1] != xb.shape[1]:
        raise ValueError(
            f"descriptor sets must match in dimension: {xa.shape[1]} vs {xb.shape[1]}"
        )
    if projections < 1:
        raise ValueError("projections must be >= 1")
    directions = projection_directions(xa.shape[1], projections, seed)
    proj_a = np.sort(xa @ directions.T, axis=0)
    proj_b = np.sort(xb @ directions.T, axis=0)
    return float(np.abs(proj_a - proj_b).mean())
