"""Command-line entry points: dataset preparation, training, evaluation,
sampling, and serving."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from PIL import Image


def _cmd_build_masks(args) -> int:
    from .data import filter_outliers, landmarks_to_edge_map, load_landmark_file

    records = load_landmark_file(args.landmarks)
    kept, rejected = filter_outliers(records)
    if args.no_filter:
        kept, rejected = records, []
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    digest = hashlib.sha256()
    for i, record in enumerate(kept):
        mask = landmarks_to_edge_map(record, args.resolution)
        Image.fromarray(mask.astype(bool)).save(out / f"mask_{i:05d}.png")
        digest.update(mask.tobytes())
    manifest = {
        "count": len(kept),
        "resolution": args.resolution,
        "provenance": "real",
        "checksum": digest.hexdigest(),
        "rejected": len(rejected),
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2))
    print(f"wrote {len(kept)} masks to {out} ({len(rejected)} records rejected)")
    return 0


def _cmd_synth(args) -> int:
    from .data import build_synthetic_shard, write_shard

    shard = build_synthetic_shard(args.count, args.resolution, args.seed)
    write_shard(shard, args.out)
    print(f"wrote synthetic shard: {args.count} pairs at {args.resolution}^2 -> {args.out}")
    return 0


def _cmd_downsample(args) -> int:
    from .data import downsample_shard, load_shard, write_shard

    shard = load_shard(args.input)
    reduced = downsample_shard(shard, args.resolution)
    write_shard(reduced, args.out)
    print(f"downsampled {shard.manifest.resolution} -> {args.resolution}: {args.out}")
    return 0


def _cmd_train(args) -> int:
    from .models import load_profile
    from .training import TrainSchedule, train

    bundle = load_profile(args.config if args.config else args.profile)
    if args.variant not in bundle.generators:
        print(f"profile has no variant {args.variant!r}", file=sys.stderr)
        return 2
    schedule = TrainSchedule.from_json_dict(bundle.schedule)
    result = train(
        bundle.generators[args.variant],
        bundle.discriminator,
        schedule,
        args.data,
        args.out,
        args.seed,
        max_steps=args.max_steps,
        resume=args.resume,
    )
    print(
        f"trained {result.steps_run} steps; checkpoint {result.checkpoint_path}, "
        f"log {result.log_path}"
    )
    return 0


def _cmd_swd(args) -> int:
    from .swd import shard_source, swd_report

    report = swd_report(
        shard_source(args.real),
        shard_source(args.fake),
        args.pairs,
        args.batch,
        min_resolution=args.min_res,
        patches_per_image=args.patches,
        patch_size=args.patch_size,
        projections=args.projections,
        seed=args.seed,
    )
    report.write(args.out)
    per_level = ", ".join(f"{r}: {v:.4f}" for r, v in sorted(report.levels.items(), reverse=True))
    print(f"SWD {per_level} | avg {report.average:.4f} -> {args.out}")
    return 0


def _cmd_sample(args) -> int:
    from .service import (
        decode_mask_png,
        encode_image_png,
        load_servable,
        synthesize_images,
    )

    servable = load_servable(args.ckpt)
    mask = decode_mask_png(Path(args.mask).read_bytes())
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    images = synthesize_images(servable, mask, seeds, args.resolution)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for seed, image in zip(seeds, images):
        (out / f"sample_seed{seed}.png").write_bytes(encode_image_png(image))
    print(f"wrote {len(images)} samples to {out}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import build_app, load_servable

    app = build_app(load_servable(args.ckpt))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maskgan")
    sub = parser.add_subparsers(dest="command", required=True)

    dataset = sub.add_parser("dataset", help="dataset preparation")
    dsub = dataset.add_subparsers(dest="dataset_command", required=True)

    build_masks = dsub.add_parser("build-masks", help="rasterize landmark records")
    build_masks.add_argument("--landmarks", required=True)
    build_masks.add_argument("--resolution", type=int, required=True)
    build_masks.add_argument("--out", required=True)
    build_masks.add_argument("--no-filter", action="store_true")
    build_masks.set_defaults(func=_cmd_build_masks)

    synth = dsub.add_parser("synth", help="generate the synthetic shapes corpus")
    synth.add_argument("--count", type=int, required=True)
    synth.add_argument("--resolution", type=int, required=True)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--out", required=True)
    synth.set_defaults(func=_cmd_synth)

    downsample = dsub.add_parser("downsample", help="reduce a shard's resolution")
    downsample.add_argument("--in", dest="input", required=True)
    downsample.add_argument("--resolution", type=int, required=True)
    downsample.add_argument("--out", required=True)
    downsample.set_defaults(func=_cmd_downsample)

    train_p = sub.add_parser("train", help="progressive WGAN-GP training")
    train_p.add_argument("--config", help="profile bundle JSON path (overrides --profile)")
    train_p.add_argument("--profile", choices=("desk", "paper"), default="desk")
    train_p.add_argument("--variant", default="embedding")
    train_p.add_argument("--data", required=True)
    train_p.add_argument("--out", required=True)
    train_p.add_argument("--seed", type=int, default=0)
    train_p.add_argument("--resume")
    train_p.add_argument("--max-steps", type=int)
    train_p.set_defaults(func=_cmd_train)

    swd_p = sub.add_parser("swd", help="sliced Wasserstein report between two shards")
    swd_p.add_argument("--real", required=True)
    swd_p.add_argument("--fake", required=True)
    swd_p.add_argument("--pairs", type=int, default=8192)
    swd_p.add_argument("--batch", type=int, default=240)
    swd_p.add_argument("--min-res", type=int, default=16)
    swd_p.add_argument("--patches", type=int, default=128)
    swd_p.add_argument("--patch-size", type=int, default=7)
    swd_p.add_argument("--projections", type=int, default=512)
    swd_p.add_argument("--seed", type=int, default=0)
    swd_p.add_argument("--out", default="report.json")
    swd_p.set_defaults(func=_cmd_swd)

    sample = sub.add_parser("sample", help="synthesize images from a checkpoint")
    sample.add_argument("--ckpt", required=True)
    sample.add_argument("--mask", required=True)
    sample.add_argument("--seeds", required=True, help="comma-separated seed list")
    sample.add_argument("--resolution", type=int)
    sample.add_argument("--out", required=True)
    sample.set_defaults(func=_cmd_sample)

    serve = sub.add_parser("serve", help="run the synthesis HTTP service")
    serve.add_argument("--ckpt", required=True)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
