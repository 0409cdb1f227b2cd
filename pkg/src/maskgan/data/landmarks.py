"""68-point face landmark records and their rasterization into edge masks."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

LANDMARK_COUNT = 68

# The 7 facial features of the standard 68-point annotation. Each feature is
# a list of strokes; a stroke is (point indices, closed). Lips are one feature
# drawn as two loops (outer 48-59, inner 60-67).
FACIAL_GROUPS: dict[str, list[tuple[range, bool]]] = {
    "jaw": [(range(0, 17), False)],
    "right_brow": [(range(17, 22), False)],
    "left_brow": [(range(22, 27), False)],
    "nose": [(range(27, 36), False)],
    "right_eye": [(range(36, 42), True)],
    "left_eye": [(range(42, 48), True)],
    "lips": [(range(48, 60), True), (range(60, 68), True)],
}

_VALID_RESOLUTIONS = tuple(2**k for k in range(3, 11))  # 8 .. 1024


@dataclass
class LandmarkSet:
    """One annotated face: 68 (x, y) points normalized to the unit square."""

    points: np.ndarray
    source_id: str = ""
    attributes: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64)
        if self.points.shape != (LANDMARK_COUNT, 2):
            raise ValueError(
                f"expected {LANDMARK_COUNT} (x, y) points, got shape {self.points.shape}"
            )

    def is_valid(self) -> bool:
        return bool(
            np.all(np.isfinite(self.points))
            and np.all(self.points >= 0.0)
            and np.all(self.points <= 1.0)
        )

    def bounding_box_area(self) -> float:
        lo = self.points.min(axis=0)
        hi = self.points.max(axis=0)
        return float(np.prod(hi - lo))

    def eye_center_distance(self) -> float:
        right = self.points[36:42].mean(axis=0)
        left = self.points[42:48].mean(axis=0)
        return float(np.linalg.norm(right - left))


def _require_resolution(resolution: int) -> None:
    if resolution not in _VALID_RESOLUTIONS:
        raise ValueError(
            f"resolution must be a power of two in [8, 1024], got {resolution}"
        )


def line_pixels(r0: int, c0: int, r1: int, c1: int) -> list[tuple[int, int]]:
    """Integer Bresenham segment from (r0, c0) to (r1, c1), endpoints included."""
    r, c = r0, c0
    dr = abs(r1 - r0)
    dc = abs(c1 - c0)
    sr = 1 if r1 > r0 else -1
    sc = 1 if c1 > c0 else -1
    steep = dr > dc
    if steep:
        r, c = c, r
        dr, dc = dc, dr
        sr, sc = sc, sr
    err = 2 * dr - dc
    pixels = []
    for _ in range(dc):
        pixels.append((c, r) if steep else (r, c))
        while err >= 0:
            r += sr
            err -= 2 * dc
        c += sc
        err += 2 * dr
    pixels.append((r1, c1))
    return pixels


def _to_pixel(xy: np.ndarray, resolution: int) -> tuple[int, int]:
    # (x, y) in [0, 1] -> (row, col); x == 1.0 lands on the last column.
    col = min(int(xy[0] * resolution), resolution - 1)
    row = min(int(xy[1] * resolution), resolution - 1)
    return row, col


# Strokes are drawn once on this grid (the resolution face landmarks are
# detected at) and OR-pooled down, so coarsening a mask never loses stroke
# coverage: pooling a 2R render to R reproduces the R render exactly.
REFERENCE_RESOLUTION = 1024


def landmarks_to_edge_map(landmarks: LandmarkSet, resolution: int) -> np.ndarray:
    """Rasterize a landmark set into a binary edge mask.

    Consecutive points within each facial stroke are connected with
    1-pixel integer line segments on the 1024 reference grid; eye and lip
    strokes are closed loops. The render is OR-pooled to the requested
    resolution. Returns a (resolution, resolution) uint8 array of {0, 1}.
    """
    _require_resolution(resolution)
    if not landmarks.is_valid():
        raise ValueError(
            f"landmark set {landmarks.source_id!r} has non-finite or out-of-range coordinates"
        )

    ref = REFERENCE_RESOLUTION
    mask = np.zeros((ref, ref), dtype=np.uint8)
    for strokes in FACIAL_GROUPS.values():
        for indices, closed in strokes:
            pts = [_to_pixel(landmarks.points[i], ref) for i in indices]
            segments = list(zip(pts[:-1], pts[1:]))
            if closed:
                segments.append((pts[-1], pts[0]))
            for (r0, c0), (r1, c1) in segments:
                for r, c in line_pixels(r0, c0, r1, c1):
                    mask[r, c] = 1
    while mask.shape[0] > resolution:
        half = mask.shape[0] // 2
        mask = mask.reshape(half, 2, half, 2).max(axis=(1, 3))
    return mask


# Geometric sanity thresholds for dropping degenerate detections.
MIN_BOX_AREA = 0.05
MAX_BOX_AREA = 0.98
MIN_EYE_DISTANCE = 0.02


def filter_outliers(
    records: list[LandmarkSet],
) -> tuple[list[LandmarkSet], list[LandmarkSet]]:
    """Partition records into (kept, rejected) by landmark geometry.

    A record is rejected when its 68-point bounding box covers less than
    5% or more than 98% of the unit square, or when the eye centers are
    closer than 2% of the image width. Records without attribute metadata
    are judged on geometry alone.
    """
    kept: list[LandmarkSet] = []
    rejected: list[LandmarkSet] = []
    for record in records:
        area = record.bounding_box_area()
        if area < MIN_BOX_AREA or area > MAX_BOX_AREA:
            rejected.append(record)
        elif record.eye_center_distance() < MIN_EYE_DISTANCE:
            rejected.append(record)
        else:
            kept.append(record)
    return kept, rejected


def parse_landmark_line(line: str) -> LandmarkSet:
    """Parse one `id x0 y0 ... x67 y67 [key=value ...]` record."""
    fields = line.split()
    if len(fields) < 1 + 2 * LANDMARK_COUNT:
        raise ValueError(
            f"landmark record needs an id and {2 * LANDMARK_COUNT} coordinates, "
            f"got {len(fields)} fields"
        )
    source_id = fields[0]
    coords = fields[1 : 1 + 2 * LANDMARK_COUNT]
    points = np.array([float(v) for v in coords], dtype=np.float64).reshape(
        LANDMARK_COUNT, 2
    )
    attributes = {}
    for extra in fields[1 + 2 * LANDMARK_COUNT :]:
        if "=" not in extra:
            raise ValueError(f"malformed attribute field {extra!r}")
        key, value = extra.split("=", 1)
        attributes[key] = value
    return LandmarkSet(points=points, source_id=source_id, attributes=attributes)


def load_landmark_file(path: str | Path) -> list[LandmarkSet]:
    """Load all landmark records from a text file, one record per line."""
    records = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            records.append(parse_landmark_line(line))
    return records
