"""Shard storage and batching for paired (edge mask, image) records."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterator

import numpy as np
from PIL import Image

from .synthetic import make_synthetic_pair

MANIFEST_NAME = "manifest.json"


@dataclass
class ShardManifest:
    count: int
    resolution: int
    provenance: str  # "real" | "synthetic"
    checksum: str


@dataclass
class DatasetShard:
    """In-memory shard: masks uint8 (N, R, R) in {0,1}, images float32
    (N, R, R, 3) in [-1, 1], values on the 8-bit grid."""

    masks: np.ndarray
    images: np.ndarray
    manifest: ShardManifest

    def __post_init__(self):
        n, r = self.masks.shape[0], self.masks.shape[1]
        if self.masks.shape != (n, r, r) or self.images.shape != (n, r, r, 3):
            raise ValueError(
                f"inconsistent shard shapes: masks {self.masks.shape}, images {self.images.shape}"
            )
        if self.manifest.count != n or self.manifest.resolution != r:
            raise ValueError("manifest does not match record arrays")

    def __len__(self) -> int:
        return self.manifest.count


def _image_to_u8(image: np.ndarray) -> np.ndarray:
    return np.rint((np.clip(image, -1.0, 1.0) + 1.0) * 127.5).astype(np.uint8)


def _u8_to_image(u8: np.ndarray) -> np.ndarray:
    return (u8.astype(np.float64) / 127.5 - 1.0).astype(np.float32)


def shard_checksum(masks: np.ndarray, images: np.ndarray) -> str:
    digest = hashlib.sha256()
    for mask, image in zip(masks, images):
        digest.update(np.ascontiguousarray(mask, dtype=np.uint8).tobytes())
        digest.update(_image_to_u8(image).tobytes())
    return digest.hexdigest()


def make_shard(masks: np.ndarray, images: np.ndarray, provenance: str) -> DatasetShard:
    masks = np.asarray(masks, dtype=np.uint8)
    images = np.asarray(images, dtype=np.float32)
    manifest = ShardManifest(
        count=masks.shape[0],
        resolution=masks.shape[1],
        provenance=provenance,
        checksum=shard_checksum(masks, images),
    )
    return DatasetShard(masks=masks, images=images, manifest=manifest)


def build_synthetic_shard(count: int, resolution: int, seed: int) -> DatasetShard:
    """Deterministic synthetic shard from record seeds seed .. seed+count-1."""
    if count < 1:
        raise ValueError("count must be >= 1")
    masks = np.empty((count, resolution, resolution), dtype=np.uint8)
    images = np.empty((count, resolution, resolution, 3), dtype=np.float32)
    for i in range(count):
        masks[i], images[i] = make_synthetic_pair(seed + i, resolution)
    return make_shard(masks, images, provenance="synthetic")


def write_shard(shard: DatasetShard, out_dir: str | Path) -> Path:
    """Write a shard directory: manifest.json plus per-record lossless PNGs."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i in range(len(shard)):
        Image.fromarray(shard.masks[i].astype(bool)).save(out / f"mask_{i:05d}.png")
        Image.fromarray(_image_to_u8(shard.images[i]), mode="RGB").save(
            out / f"img_{i:05d}.png"
        )
    (out / MANIFEST_NAME).write_text(json.dumps(asdict(shard.manifest), indent=2))
    return out


def load_shard(shard_dir: str | Path) -> DatasetShard:
    shard_dir = Path(shard_dir)
    manifest_path = shard_dir / MANIFEST_NAME
    if not manifest_path.exists():
        raise FileNotFoundError(f"no {MANIFEST_NAME} in {shard_dir}")
    manifest = ShardManifest(**json.loads(manifest_path.read_text()))
    masks = np.empty(
        (manifest.count, manifest.resolution, manifest.resolution), dtype=np.uint8
    )
    images = np.empty(
        (manifest.count, manifest.resolution, manifest.resolution, 3), dtype=np.float32
    )
    for i in range(manifest.count):
        masks[i] = np.array(Image.open(shard_dir / f"mask_{i:05d}.png"), dtype=np.uint8)
        images[i] = _u8_to_image(np.array(Image.open(shard_dir / f"img_{i:05d}.png")))
    actual = shard_checksum(masks, images)
    if actual != manifest.checksum:
        raise ValueError(
            f"shard checksum mismatch in {shard_dir}: manifest {manifest.checksum}, "
            f"records {actual}"
        )
    return DatasetShard(masks=masks, images=images, manifest=manifest)


def downsample_shard(shard: DatasetShard, target_resolution: int) -> DatasetShard:
    """Reduce a shard to a lower resolution.

    Images are reduced by repeated 2x2 box averaging; masks by logical-OR
    pooling so fine-scale edges survive coarsening. Upsampling is rejected.
    """
    source = shard.manifest.resolution
    if target_resolution > source:
        raise ValueError(
            f"cannot upsample shard from {source} to {target_resolution}"
        )
    if target_resolution < 1 or source % target_resolution != 0:
        raise ValueError(
            f"target resolution {target_resolution} must divide shard resolution {source}"
        )
    if target_resolution & (target_resolution - 1) != 0:
        raise ValueError(f"target resolution {target_resolution} must be a power of two")

    masks = shard.masks
    images = shard.images
    while masks.shape[1] > target_resolution:
        n, r = masks.shape[0], masks.shape[1]
        masks = masks.reshape(n, r // 2, 2, r // 2, 2).max(axis=(2, 4))
        images = images.reshape(n, r // 2, 2, r // 2, 2, 3).mean(axis=(2, 4))
    return make_shard(masks, images.astype(np.float32), shard.manifest.provenance)


def batch_iterator(
    shard: DatasetShard,
    batch_size: int,
    seed: int,
    epochs: int | None = None,
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Seeded shuffled (mask batch, image batch) stream.

    Each epoch reshuffles reproducibly; the final partial batch of every
    epoch is dropped. `epochs=None` streams forever. Single consumer per
    iterator; create one iterator per worker.
    """
    if len(shard) == 0:
        raise ValueError("cannot iterate an empty shard")
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")
    if batch_size > len(shard):
        raise ValueError(
            f"batch_size {batch_size} exceeds shard size {len(shard)}"
        )
    rng = np.random.default_rng(seed)

    def generate():
        epoch = 0
        while epochs is None or epoch < epochs:
            order = rng.permutation(len(shard))
            for start in range(0, len(shard) - batch_size + 1, batch_size):
                idx = order[start : start + batch_size]
                yield shard.masks[idx], shard.images[idx]
            epoch += 1

    return generate()
