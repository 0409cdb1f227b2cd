"""Checkpoint loading and mask-conditioned synthesis, as a library and as
a small HTTP API (POST /v1/synthesize, GET /v1/health, GET /v1/model).

Seed-to-latent expansion uses numpy's Philox counter-based generator keyed
by the seed, so a displayed seed reproduces the same latent vector in any
implementation with a Philox4x32-10 generator.
"""

from __future__ import annotations

import base64
import hashlib
import io
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pydantic as _pydantic
import torch
from PIL import Image

from .checkpoint import CheckpointError, load_checkpoint
from .models import Generator, parameter_shapes
from .models.config import GeneratorConfig

MAX_SEEDS_PER_REQUEST = 64


def latent_from_seed(seed: int, dim: int) -> np.ndarray:
    """Standard-normal latent vector from a counter-based (Philox) stream."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    return rng.standard_normal(dim).astype(np.float32)


@dataclass
class Servable:
    generator: Generator
    config: GeneratorConfig
    config_hash: str
    step: int
    max_resolution: int  # capability: the phase resolution the model reached


def load_servable(path: str | Path) -> Servable:
    """Load a checkpoint for serving; validates format, checksum, and the
    array shapes against the embedded config before any use."""
    arrays, manifest = load_checkpoint(path)
    config = GeneratorConfig.from_json_dict(manifest["generator_config"])
    expected = parameter_shapes(config)
    weights = {
        name[len("generator/") :]: value
        for name, value in arrays.items()
        if name.startswith("generator/")
    }
    if set(weights) != set(expected):
        missing = sorted(set(expected) - set(weights))[:3]
        surplus = sorted(set(weights) - set(expected))[:3]
        raise CheckpointError(
            f"{path}: generator arrays do not match config (missing {missing}, surplus {surplus})"
        )
    for name, value in weights.items():
        if tuple(value.shape) != expected[name]:
            raise CheckpointError(
                f"{path}: array {name} has shape {tuple(value.shape)}, config implies {expected[name]}"
            )
        if not np.isfinite(value).all():
            raise CheckpointError(f"{path}: array {name} contains non-finite values")
    generator = Generator(config)
    with torch.no_grad():
        for name, p in generator.named_parameters():
            p.copy_(torch.from_numpy(weights[name]))
    generator.eval()
    return Servable(
        generator=generator,
        config=config,
        config_hash=manifest["config_hash"],
        step=int(manifest["step"]),
        max_resolution=int(manifest["phase"]["resolution"]),
    )


def resample_mask(mask: np.ndarray, target_resolution: int) -> np.ndarray:
    """OR-pool a binary mask down or nearest-upsample it up to the target."""
    mask = np.asarray(mask, dtype=np.uint8)
    current = mask.shape[0]
    if current < 1 or current & (current - 1) != 0:
        raise ValueError(f"mask resolution must be a power of two, got {current}")
    while current > target_resolution:
        current //= 2
        mask = mask.reshape(current, 2, current, 2).max(axis=(1, 3))
    while current < target_resolution:
        current *= 2
        mask = np.repeat(np.repeat(mask, 2, axis=0), 2, axis=1)
    return mask


def synthesize_images(
    servable: Servable,
    mask: np.ndarray,
    seeds: list[int],
    resolution: int | None = None,
) -> list[np.ndarray]:
    """One image per seed, float32 (R, R, 3) in [-1, 1], at fade alpha 1.

    Deterministic per (checkpoint, mask, seed); repeated seeds reuse the
    identical forward result. The mask is resampled to the requested
    resolution server-side.
    """
    if not 1 <= len(seeds) <= MAX_SEEDS_PER_REQUEST:
        raise ValueError(f"need between 1 and {MAX_SEEDS_PER_REQUEST} seeds, got {len(seeds)}")
    resolution = servable.max_resolution if resolution is None else resolution
    if resolution > servable.max_resolution:
        raise ValueError(
            f"resolution {resolution} above checkpoint capability {servable.max_resolution}"
        )
    if resolution not in servable.config.resolutions():
        raise ValueError(
            f"resolution {resolution} not servable; choose from {servable.config.resolutions()}"
        )
    mask = resample_mask(mask, resolution)
    mask_t = torch.from_numpy(mask).float().view(1, 1, resolution, resolution)

    cache: dict[int, np.ndarray] = {}
    outputs = []
    with torch.no_grad():
        for seed in seeds:
            if seed not in cache:
                if servable.config.variant == "pix2pix_baseline":
                    z = None
                else:
                    z = torch.from_numpy(
                        latent_from_seed(seed, servable.config.latent_dim)
                    ).unsqueeze(0)
                image = servable.generator(z, mask_t, resolution, alpha=1.0)
                cache[seed] = image[0].permute(1, 2, 0).numpy().copy()
            outputs.append(cache[seed])
    return outputs


def encode_image_png(image: np.ndarray) -> bytes:
    u8 = np.rint((np.clip(image, -1.0, 1.0) + 1.0) * 127.5).astype(np.uint8)
    buf = io.BytesIO()
    Image.fromarray(u8, mode="RGB").save(buf, format="PNG")
    return buf.getvalue()


def encode_mask_png(mask: np.ndarray) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(np.asarray(mask, dtype=bool)).save(buf, format="PNG")
    return buf.getvalue()


def decode_mask_png(data: bytes) -> np.ndarray:
    """Decode a 1-bit (or strictly binary grayscale) PNG into {0,1} uint8."""
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except Exception as exc:
        raise ValueError(f"malformed mask encoding: {exc}") from exc
    if img.mode not in ("1", "L"):
        raise ValueError(f"mask PNG must be 1-bit or grayscale, got mode {img.mode!r}")
    arr = np.array(img)
    values = set(np.unique(arr).tolist())
    if not values <= {0, 1, 255}:
        raise ValueError("mask PNG must be strictly binary")
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"mask must be square, got {arr.shape}")
    return (arr > 0).astype(np.uint8)


def mask_checksum(mask: np.ndarray) -> str:
    return hashlib.sha256(np.asarray(mask, dtype=np.uint8).tobytes()).hexdigest()


class SynthesizeBody(_pydantic.BaseModel):
    mask_png: str = _pydantic.Field(description="base64 1-bit PNG edge mask")
    seeds: list[int]
    resolution: int | None = None


class RasterizeBody(_pydantic.BaseModel):
    points: list[list[float]]
    resolution: int


def build_app(servable: Servable):
    """FastAPI application bound to one loaded (immutable) checkpoint."""
    from fastapi import FastAPI, Request
    from fastapi.responses import JSONResponse

    app = FastAPI(title="maskgan synthesis service")

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=400, content={"code": "bad_request", "message": str(exc)}
        )

    @app.exception_handler(Exception)
    async def internal_error_handler(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500, content={"code": "internal_error", "message": str(exc)}
        )

    @app.get("/v1/health")
    def health():
        return {"status": "ok"}

    @app.get("/v1/model")
    def model_info():
        return {
            "config_hash": servable.config_hash,
            "variant": servable.config.variant,
            "max_resolution": servable.max_resolution,
            "step": servable.step,
            "latent_dim": servable.config.latent_dim,
        }

    @app.post("/v1/synthesize")
    def synthesize(body: SynthesizeBody):
        try:
            raw = base64.b64decode(body.mask_png, validate=True)
        except Exception as exc:
            raise ValueError(f"mask_png is not valid base64: {exc}") from exc
        mask = decode_mask_png(raw)
        started = time.perf_counter()
        images = synthesize_images(servable, mask, body.seeds, body.resolution)
        elapsed = time.perf_counter() - started
        return {
            "images_png": [
                base64.b64encode(encode_image_png(img)).decode() for img in images
            ],
            "model": model_info(),
            "timing_seconds": elapsed,
        }

    @app.post("/v1/rasterize")
    def rasterize(body: RasterizeBody):
        from .data.landmarks import LandmarkSet, landmarks_to_edge_map

        points = np.asarray(body.points, dtype=np.float64)
        landmarks = LandmarkSet(points=points)
        mask = landmarks_to_edge_map(landmarks, body.resolution)
        return {
            "mask_png": base64.b64encode(encode_mask_png(mask)).decode(),
            "checksum": mask_checksum(mask),
        }

    return app
