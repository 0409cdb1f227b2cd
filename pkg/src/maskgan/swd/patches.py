"""Patch descriptor extraction and per-channel normalization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pyramid import PyramidLevel

STD_FLOOR = 1e-8


@dataclass
class PatchDescriptorSet:
    resolution: int
    patch_size: int
    descriptors: np.ndarray  # (N, patch*patch*C)
    mean: np.ndarray | None = None  # per-channel stats once normalized
    std: np.ndarray | None = None

    def __len__(self) -> int:
        return self.descriptors.shape[0]


def extract_patches(
    level: PyramidLevel, count: int, patch: int, seed: int
) -> PatchDescriptorSet:
    """Sample `count` uniformly-placed patch descriptors from one pyramid
    level (seeded top-left corners, flattened pixels, no normalization)."""
    band = level.band
    resolution = level.resolution
    if patch > resolution:
        raise ValueError(f"patch size {patch} exceeds level resolution {resolution}")
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    rows = rng.integers(0, resolution - patch + 1, size=count)
    cols = rng.integers(0, resolution - patch + 1, size=count)
    channels = band.shape[2]
    descriptors = np.empty((count, patch * patch * channels), dtype=np.float64)
    for i, (r, c) in enumerate(zip(rows, cols)):
        descriptors[i] = band[r : r + patch, c : c + patch].reshape(-1)
    return PatchDescriptorSet(
        resolution=resolution, patch_size=patch, descriptors=descriptors
    )


def pool_descriptor_sets(sets: list[PatchDescriptorSet]) -> PatchDescriptorSet:
    """Concatenate per-image descriptor sets from one pyramid level."""
    first = sets[0]
    if any(
        s.resolution != first.resolution or s.patch_size != first.patch_size
        for s in sets
    ):
        raise ValueError("cannot pool descriptor sets from different levels")
    return PatchDescriptorSet(
        resolution=first.resolution,
        patch_size=first.patch_size,
        descriptors=np.concatenate([s.descriptors for s in sets], axis=0),
    )


def normalize_descriptors(dset: PatchDescriptorSet) -> PatchDescriptorSet:
    """Subtract the per-color-channel mean and divide by the per-channel
    std, both computed over the whole set; the statistics used are
    recorded on the returned set. Std is floored at 1e-8."""
    if len(dset) == 0:
        raise ValueError("cannot normalize an empty descriptor set")
    p = dset.patch_size
    channels = dset.descriptors.shape[1] // (p * p)
    view = dset.descriptors.reshape(len(dset), p, p, channels)
    mean = view.mean(axis=(0, 1, 2))
    raw_std = view.std(axis=(0, 1, 2))
    std = np.maximum(raw_std, STD_FLOOR)
    centered = view - mean
    # degenerate channels are exactly constant up to rounding noise; the
    # floored division must not amplify that noise
    centered[..., raw_std < STD_FLOOR] = 0.0
    normalized = centered / std
    return PatchDescriptorSet(
        resolution=dset.resolution,
        patch_size=p,
        descriptors=normalized.reshape(len(dset), -1),
        mean=mean,
        std=std,
    )
