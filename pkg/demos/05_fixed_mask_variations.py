#!/usr/bin/env python3
"""One mask, many faces: the changing-latent experiment.

Loads the trained desk-scale embedding checkpoint (artifacts/table1, or
a path given on the command line), holds one synthetic mask fixed, and
synthesizes a row of images from different seeds; repeats with the
pix2pix baseline, which collapses to a single answer per mask. Also
shows how the same request travels over the HTTP API.
"""

import base64
import sys
from pathlib import Path

import numpy as np
from PIL import Image

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from maskgan.data.synthetic import synthetic_interior, synthetic_mask
from maskgan.service import (
    build_app,
    encode_mask_png,
    load_servable,
    synthesize_images,
)

ARTIFACTS = Path(__file__).resolve().parent.parent / "artifacts" / "table1"


def save_row(images, path):
    row = np.concatenate(images, axis=1)
    u8 = np.rint((np.clip(row, -1, 1) + 1) * 127.5).astype(np.uint8)
    Image.fromarray(u8, mode="RGB").save(path)


def main() -> int:
    ckpt = Path(sys.argv[1]) if len(sys.argv) > 1 else ARTIFACTS / "embedding.ckpt"
    if not ckpt.exists():
        print(f"no checkpoint at {ckpt}; run demos/run_table1.py first", file=sys.stderr)
        return 1
    out = Path("runs/demo05")
    out.mkdir(parents=True, exist_ok=True)

    mask = synthetic_mask(5, 32)
    Image.fromarray(mask.astype(bool)).save(out / "mask.png")

    servable = load_servable(ckpt)
    seeds = [3, 14, 15, 92, 65, 35]
    images = synthesize_images(servable, mask, seeds)
    save_row(images, out / "embedding_row.png")
    interior = synthetic_interior(5, 32)
    colors = np.stack([img[interior].mean(axis=0) for img in images])
    print(f"embedding model, {len(seeds)} seeds on one mask: "
          f"mean interior color std {colors.std(axis=0).mean():.4f}")

    baseline = ARTIFACTS / "pix2pix_baseline.ckpt"
    if baseline.exists():
        images_p2p = synthesize_images(load_servable(baseline), mask, seeds)
        save_row(images_p2p, out / "pix2pix_row.png")
        colors_p2p = np.stack([img[interior].mean(axis=0) for img in images_p2p])
        print(f"pix2pix baseline on the same mask:        "
              f"mean interior color std {colors_p2p.std(axis=0).mean():.4f}")

    # the same loop through the HTTP surface
    from fastapi.testclient import TestClient

    client = TestClient(build_app(servable))
    payload = {
        "mask_png": base64.b64encode(encode_mask_png(mask)).decode(),
        "seeds": seeds[:3],
    }
    response = client.post("/v1/synthesize", json=payload)
    body = response.json()
    print(f"HTTP /v1/synthesize: {response.status_code}, "
          f"{len(body['images_png'])} images, model {body['model']['variant']} "
          f"@{body['model']['max_resolution']}^2")
    (out / "http_image0.png").write_bytes(base64.b64decode(body["images_png"][0]))
    print(f"wrote rows to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
