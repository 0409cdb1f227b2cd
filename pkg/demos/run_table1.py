#!/usr/bin/env python3
"""Desk-scale replication of the embedding vs. no-embedding comparison.

Builds the synthetic shapes corpus, trains the three generator variants
under identical seeds and schedules (the pix2pix baseline trains directly
at the target resolution for the same number of steps), then scores each
model: sliced-Wasserstein report against the real corpus, mask/boundary
alignment, and color diversity under a fixed mask. Writes results.json
plus slim generator-only checkpoints suitable for serving.

The defaults reproduce the committed artifacts under artifacts/table1:

    python demos/run_table1.py --out runs/table1
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from maskgan.checkpoint import load_checkpoint, save_checkpoint
from maskgan.data import (
    boundary_overlap,
    build_synthetic_shard,
    downsample_shard,
    load_shard,
    palette_color_std,
    write_shard,
)
from maskgan.data.synthetic import synthetic_interior, synthetic_mask
from maskgan.models import load_profile
from maskgan.service import load_servable, synthesize_images
from maskgan.swd import array_source, swd_report
from maskgan.training import TrainSchedule, train

VARIANTS = ("embedding", "no_embedding", "pix2pix_baseline")


def build_corpus(root: Path, count: int, resolution: int, seed: int) -> None:
    if (root / str(resolution) / "manifest.json").exists():
        return
    shard = build_synthetic_shard(count, resolution, seed)
    res = resolution
    write_shard(shard, root / str(res))
    while res > 8:
        res //= 2
        shard = downsample_shard(shard, res)
        write_shard(shard, root / str(res))


def slim_checkpoint(full_path: Path, slim_path: Path) -> None:
    arrays, manifest = load_checkpoint(full_path)
    generator_only = {k: v for k, v in arrays.items() if k.startswith("generator/")}
    save_checkpoint(
        slim_path,
        generator_only,
        generator_config=manifest["generator_config"],
        config_hash=manifest["config_hash"],
        step=manifest["step"],
        phase_resolution=manifest["phase"]["resolution"],
        phase_mode=manifest["phase"]["mode"],
    )


def generate_batch(servable, masks: np.ndarray, seeds: list[int]) -> np.ndarray:
    """One image per (mask, seed) pair at the servable's top resolution."""
    out = np.empty(masks.shape[:1] + masks.shape[1:] + (3,), dtype=np.float32)
    for i, (mask, seed) in enumerate(zip(masks, seeds)):
        out[i] = synthesize_images(servable, mask, [int(seed)])[0]
    return out


def fake_source_for(servable, masks: np.ndarray, seed: int):
    rng = np.random.default_rng(seed)
    cursor = {"at": 0}

    def take(n: int) -> np.ndarray:
        start = cursor["at"]
        if start + n > masks.shape[0]:
            raise ValueError("mask pool exhausted")
        cursor["at"] = start + n
        seeds = rng.integers(0, 2**31 - 1, size=n)
        return generate_batch(servable, masks[start : start + n], list(seeds))

    return take


def mean_interior_colors(images: np.ndarray, shape_index: int) -> np.ndarray:
    interior = synthetic_interior(shape_index, images.shape[1])
    return images[:, interior].mean(axis=1)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="runs/table1")
    parser.add_argument("--count", type=int, default=4096, help="corpus size")
    parser.add_argument("--resolution", type=int, default=32)
    parser.add_argument("--steps-per-phase", type=int, default=None,
                        help="override the desk profile phase length")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--swd-pairs", type=int, default=2048)
    parser.add_argument("--swd-batch", type=int, default=240)
    parser.add_argument("--alignment-samples", type=int, default=256)
    parser.add_argument("--diversity-seeds", type=int, default=16)
    parser.add_argument("--variants", nargs="*", default=list(VARIANTS))
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    data_root = out / "data"

    bundle = load_profile("desk")
    schedule_dict = dict(bundle.schedule)
    if args.steps_per_phase:
        schedule_dict["steps_per_phase"] = args.steps_per_phase
        schedule_dict["fade_steps"] = args.steps_per_phase
    schedule = TrainSchedule.from_json_dict(schedule_dict)

    print(f"[1/4] corpus: {args.count} pairs at {args.resolution}^2")
    build_corpus(data_root, args.count, args.resolution, args.seed)
    corpus = load_shard(data_root / str(args.resolution))

    results: dict = {
        "config": {
            "corpus_count": args.count,
            "resolution": args.resolution,
            "steps_per_phase": schedule.steps_per_phase,
            "fade_steps": schedule.fade_steps,
            "seed": args.seed,
            "swd_pairs": args.swd_pairs,
            "swd_batch": args.swd_batch,
        },
        "swd": {},
        "alignment": {},
        "diversity": {},
        "checkpoints": {},
        "train_minutes": {},
    }

    for variant in args.variants:
        run_dir = out / variant
        ckpt = run_dir / "checkpoint.ckpt"
        if not ckpt.exists():
            print(f"[2/4] training {variant}")
            started = time.time()
            train(
                bundle.generators[variant],
                bundle.discriminator,
                schedule,
                data_root,
                run_dir,
                seed=args.seed,
            )
            results["train_minutes"][variant] = round((time.time() - started) / 60, 1)
        slim = out / f"{variant}.ckpt"
        slim_checkpoint(ckpt, slim)
        results["checkpoints"][variant] = slim.name

    half = args.swd_pairs
    real_images = corpus.images[:half]
    real_masks = corpus.masks[:half]
    disjoint = corpus.images[half : 2 * half]

    print("[3/4] SWD reports")
    if disjoint.shape[0] == half:
        floor = swd_report(
            array_source(real_images),
            array_source(disjoint),
            half,
            args.swd_batch,
            min_resolution=16,
            seed=args.seed,
        )
        results["swd"]["real_floor"] = json.loads(floor.to_json())

    rng = np.random.default_rng(args.seed + 99)
    noisy = np.clip(
        real_images + rng.normal(0.0, 0.35, real_images.shape).astype(np.float32), -1, 1
    )
    noise_ref = swd_report(
        array_source(real_images),
        array_source(noisy),
        half,
        args.swd_batch,
        min_resolution=16,
        seed=args.seed,
    )
    results["swd"]["real_vs_noise"] = json.loads(noise_ref.to_json())

    for variant in args.variants:
        servable = load_servable(out / f"{variant}.ckpt")
        report = swd_report(
            array_source(real_images),
            fake_source_for(servable, real_masks, args.seed + 7),
            half,
            args.swd_batch,
            min_resolution=16,
            seed=args.seed,
        )
        results["swd"][variant] = json.loads(report.to_json())
        print(f"  {variant}: avg {report.average:.4f}")

    print("[4/4] alignment + diversity")
    for variant in args.variants:
        servable = load_servable(out / f"{variant}.ckpt")
        n = args.alignment_samples
        fakes = generate_batch(
            servable, corpus.masks[:n], list(range(1000, 1000 + n))
        )
        overlaps = [
            boundary_overlap(corpus.masks[i], fakes[i]) for i in range(n)
        ]
        results["alignment"][variant] = float(np.mean(overlaps))
        print(f"  {variant}: boundary overlap {results['alignment'][variant]:.3f}")

    shape_index = 5
    fixed_mask = synthetic_mask(shape_index, args.resolution)
    for variant in args.variants:
        servable = load_servable(out / f"{variant}.ckpt")
        images = np.stack(
            synthesize_images(
                servable, fixed_mask, list(range(args.diversity_seeds))
            )
        )
        colors = mean_interior_colors(images, shape_index)
        results["diversity"][variant] = float(colors.std(axis=0).mean())
        print(f"  {variant}: fixed-mask color std {results['diversity'][variant]:.4f}")
    results["diversity"]["palette_std"] = palette_color_std()
    results["diversity"]["fixed_mask_shape_index"] = shape_index

    (out / "results.json").write_text(json.dumps(results, indent=2))
    print(f"results -> {out / 'results.json'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
