#!/usr/bin/env python3
"""Generate rasterizer-parity fixtures from the service-side implementation.

Writes frontend/tests/fixtures/rasterizer_parity.json (20 landmark template
states with the sha256 checksum of the server-rasterized mask) and
line_segments.json (Bresenham runs).  Re-run after any rasterizer change:

    python frontend/scripts/make_fixtures.py
"""

import json
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent.parent
sys.path.insert(0, str(ROOT / "src"))

from maskgan.data import LandmarkSet, landmarks_to_edge_map, line_pixels
from maskgan.service import mask_checksum


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
    fixtures = ROOT / "frontend" / "tests" / "fixtures"
    fixtures.mkdir(parents=True, exist_ok=True)

    rng = np.random.default_rng(2026)
    base = template_face()
    states = []
    for index in range(20):
        if index == 0:
            points = base
            resolution = 64
        elif index == 1:
            points = np.full((68, 2), 0.5)  # degenerate single-pixel state
            resolution = 8
        else:
            jitter = rng.normal(0, 0.01 + 0.01 * (index % 3), (68, 2))
            points = np.clip(base + jitter, 0.0, 1.0)
            resolution = int(rng.choice([32, 64, 128]))
        mask = landmarks_to_edge_map(LandmarkSet(points=points), resolution)
        states.append(
            {
                "name": f"state-{index:02d}",
                "resolution": resolution,
                "points": np.round(points, 6).tolist(),
                "checksum": mask_checksum(
                    landmarks_to_edge_map(
                        LandmarkSet(points=np.round(points, 6)), resolution
                    )
                ),
                "pixels_set": int(mask.sum()),
            }
        )
    (fixtures / "rasterizer_parity.json").write_text(json.dumps(states, indent=1))

    seg_rng = np.random.default_rng(7)
    segments = []
    for _ in range(100):
        r0, c0, r1, c1 = (int(v) for v in seg_rng.integers(0, 96, size=4))
        segments.append(
            {"from": [r0, c0], "to": [r1, c1], "pixels": line_pixels(r0, c0, r1, c1)}
        )
    (fixtures / "line_segments.json").write_text(json.dumps(segments))
    print(f"wrote {len(states)} parity states and {len(segments)} segments to {fixtures}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
