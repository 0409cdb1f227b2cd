"""Batched corpus comparison producing per-pyramid-level distances."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .distance import DEFAULT_PROJECTIONS, sliced_wasserstein
from .patches import extract_patches, normalize_descriptors, pool_descriptor_sets
from .pyramid import laplacian_pyramid

# A source yields the next `n` images as one (n, R, R, 3) array in [-1, 1].
ImageSource = Callable[[int], np.ndarray]


@dataclass
class SWDReport:
    levels: dict[int, float]
    average: float
    pairs: int
    batch_pairs: int
    min_resolution: int
    patches_per_image: int
    patch_size: int
    projections: int
    seed: int
    batches: int = 0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        data = asdict(self)
        data["levels"] = {str(k): v for k, v in sorted(self.levels.items(), reverse=True)}
        return json.dumps(data, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "SWDReport":
        data = json.loads(text)
        data["levels"] = {int(k): float(v) for k, v in data["levels"].items()}
        return cls(**data)

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_json())
        return path


def array_source(images: np.ndarray) -> ImageSource:
    """Sequential source over a fixed image stack; errors when exhausted."""
    images = np.asarray(images)
    cursor = {"at": 0}

    def take(n: int) -> np.ndarray:
        start = cursor["at"]
        if start + n > images.shape[0]:
            raise ValueError(
                f"source exhausted: need {n} more images, have {images.shape[0] - start}"
            )
        cursor["at"] = start + n
        return images[start : start + n]

    return take


def shard_source(shard_dir: str | Path) -> ImageSource:
    from ..data.shards import load_shard

    return array_source(load_shard(shard_dir).images)


def _derived_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def swd_report(
    real_source: ImageSource,
    fake_source: ImageSource,
    total_pairs: int,
    batch_pairs: int,
    *,
    min_resolution: int = 16,
    patches_per_image: int = 128,
    patch_size: int = 7,
    projections: int = DEFAULT_PROJECTIONS,
    seed: int = 0,
) -> SWDReport:
    """Compare two corpora with the batched sliced-Wasserstein protocol.

    Processes ceil(total_pairs / batch_pairs) batches. Per batch and
    pyramid level, `patches_per_image` descriptors per image are pooled
    across the batch, each side is normalized on its own statistics, and
    an SWD value is computed; the reported per-level figure is the mean
    over batches and the average is the mean over levels. Patch corners
    are replayed identically for both sides, so comparing a corpus with
    itself reports zero.
    """
    if total_pairs < 1 or batch_pairs < 1:
        raise ValueError("total_pairs and batch_pairs must be >= 1")
    batches = math.ceil(total_pairs / batch_pairs)
    sums: dict[int, float] = {}
    remaining = total_pairs

    for batch_index in range(batches):
        n = min(batch_pairs, remaining)
        remaining -= n
        sides = (
            np.asarray(real_source(n), dtype=np.float64),
            np.asarray(fake_source(n), dtype=np.float64),
        )
        if sides[0].shape != sides[1].shape:
            raise ValueError(
                f"real and fake batches differ in shape: {sides[0].shape} vs {sides[1].shape}"
            )

        per_level: dict[int, tuple[list, list]] = {}
        for side_index, batch_images in enumerate(sides):
            for image_index, image in enumerate(batch_images):
                for level in laplacian_pyramid(image, min_resolution):
                    bucket = per_level.setdefault(level.resolution, ([], []))
                    bucket[side_index].append(
                        extract_patches(
                            level,
                            patches_per_image,
                            patch_size,
                            seed=_derived_seed(
                                seed, batch_index, level.resolution, image_index
                            ),
                        )
                    )

        for resolution, (real_sets, fake_sets) in per_level.items():
            a = normalize_descriptors(pool_descriptor_sets(real_sets))
            b = normalize_descriptors(pool_descriptor_sets(fake_sets))
            value = sliced_wasserstein(
                a,
                b,
                projections=projections,
                seed=_derived_seed(seed, batch_index, resolution),
            )
            sums[resolution] = sums.get(resolution, 0.0) + value

    levels = {r: s / batches for r, s in sums.items()}
    average = float(np.mean(list(levels.values())))
    return SWDReport(
        levels=levels,
        average=average,
        pairs=total_pairs,
        batch_pairs=batch_pairs,
        min_resolution=min_resolution,
        patches_per_image=patches_per_image,
        patch_size=patch_size,
        projections=projections,
        seed=seed,
        batches=batches,
    )
