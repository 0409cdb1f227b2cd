#!/usr/bin/env python3
"""Landmark records to binary edge masks.

Builds a small landmark file (one synthetic face plus two degenerate
records), runs outlier filtering, rasterizes the survivors at several
resolutions, and writes the masks as PNGs under runs/demo01/.
"""

import sys
from pathlib import Path

import numpy as np
from PIL import Image

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from maskgan.data import (
    filter_outliers,
    landmarks_to_edge_map,
    load_landmark_file,
)


def template_face() -> np.ndarray:
    pts = np.zeros((68, 2))
    t = np.linspace(np.pi * 0.15, np.pi * 0.85, 17)
    pts[0:17, 0] = 0.5 + 0.38 * np.cos(t[::-1])
    pts[0:17, 1] = 0.45 + 0.42 * np.sin(t[::-1])
    pts[17:22, 0] = np.linspace(0.22, 0.42, 5)
    pts[17:22, 1] = 0.30 - 0.03 * np.sin(np.linspace(0, np.pi, 5))
    pts[22:27, 0] = np.linspace(0.58, 0.78, 5)
    pts[22:27, 1] = 0.30 - 0.03 * np.sin(np.linspace(0, np.pi, 5))
    pts[27:31, 0] = 0.5
    pts[27:31, 1] = np.linspace(0.36, 0.52, 4)
    pts[31:36, 0] = np.linspace(0.44, 0.56, 5)
    pts[31:36, 1] = 0.56
    angles = np.linspace(0, 2 * np.pi, 6, endpoint=False)
    pts[36:42, 0] = 0.33 + 0.05 * np.cos(angles)
    pts[36:42, 1] = 0.38 + 0.03 * np.sin(angles)
    pts[42:48, 0] = 0.67 + 0.05 * np.cos(angles)
    pts[42:48, 1] = 0.38 + 0.03 * np.sin(angles)
    a12 = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    pts[48:60, 0] = 0.5 + 0.12 * np.cos(a12)
    pts[48:60, 1] = 0.70 + 0.05 * np.sin(a12)
    a8 = np.linspace(0, 2 * np.pi, 8, endpoint=False)
    pts[60:68, 0] = 0.5 + 0.07 * np.cos(a8)
    pts[60:68, 1] = 0.70 + 0.025 * np.sin(a8)
    return pts


def main() -> int:
    out = Path("runs/demo01")
    out.mkdir(parents=True, exist_ok=True)

    face = template_face()
    rng = np.random.default_rng(0)
    lines = []
    for i in range(4):
        jitter = np.clip(face + rng.normal(0, 0.005, face.shape), 0, 1)
        coords = " ".join(f"{x:.6f} {y:.6f}" for x, y in jitter)
        lines.append(f"face-{i} {coords} gender={'f' if i % 2 else 'm'}")
    # two records the outlier filter should reject
    lines.append("degenerate-dot " + " ".join(["0.5 0.5"] * 68))
    wild = rng.uniform(0, 1, (68, 2))
    wild[0], wild[1] = [0.001, 0.001], [0.999, 0.999]
    lines.append("degenerate-wild " + " ".join(f"{x:.6f} {y:.6f}" for x, y in wild))

    landmark_file = out / "landmarks.txt"
    landmark_file.write_text("\n".join(lines))

    records = load_landmark_file(landmark_file)
    kept, rejected = filter_outliers(records)
    print(f"loaded {len(records)} records; kept {len(kept)}, rejected "
          f"{[r.source_id for r in rejected]}")

    for resolution in (32, 64, 256):
        mask = landmarks_to_edge_map(kept[0], resolution)
        Image.fromarray(mask.astype(bool)).save(out / f"mask_{resolution}.png")
        print(f"resolution {resolution:4d}: {int(mask.sum())} edge pixels")

    # coarsening never loses stroke coverage: pooling a 2x render onto the
    # coarse grid reproduces the coarse render
    fine = landmarks_to_edge_map(kept[0], 128)
    pooled = fine.reshape(64, 2, 64, 2).max(axis=(1, 3))
    coarse = landmarks_to_edge_map(kept[0], 64)
    print("OR-pooled 128 render covers the 64 render:",
          bool(np.all(pooled >= coarse)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
