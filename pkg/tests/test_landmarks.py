import numpy as np
import pytest
from skimage.draw import line as skimage_line

from maskgan.data import (
    FACIAL_GROUPS,
    LANDMARK_COUNT,
    LandmarkSet,
    filter_outliers,
    landmarks_to_edge_map,
    line_pixels,
    parse_landmark_line,
    load_landmark_file,
)


def test_facial_groups_cover_all_indices_once():
    seen = []
    for strokes in FACIAL_GROUPS.values():
        for indices, _ in strokes:
            seen.extend(indices)
    assert sorted(seen) == list(range(LANDMARK_COUNT))


def test_seven_facial_groups():
    assert len(FACIAL_GROUPS) == 7


def test_coincident_points_single_pixel():
    lm = LandmarkSet(points=np.full((68, 2), 0.5))
    mask = landmarks_to_edge_map(lm, 8)
    assert mask.sum() == 1
    assert mask[4, 4] == 1


def test_diagonal_jaw_segment_matches_reference_rasterizer():
    pts = np.zeros((68, 2))
    pts[1] = [0.375, 0.375]
    mask = landmarks_to_edge_map(LandmarkSet(points=pts), 8)
    # independent brute-force rasterization: dense sampling of the segment
    # between the quantized endpoints (0,0) and (3,3)
    expected = np.zeros((8, 8), dtype=np.uint8)
    for t in np.linspace(0.0, 1.0, 1000):
        expected[int(round(3 * t)), int(round(3 * t))] = 1
    assert np.array_equal(mask, expected)


def test_line_pixels_against_skimage():
    rng = np.random.default_rng(0)
    for _ in range(500):
        r0, c0, r1, c1 = rng.integers(0, 64, size=4)
        mine = line_pixels(int(r0), int(c0), int(r1), int(c1))
        rr, cc = skimage_line(int(r0), int(c0), int(r1), int(c1))
        assert mine == list(zip(rr.tolist(), cc.tolist()))


def test_line_pixels_endpoints_and_connectivity():
    rng = np.random.default_rng(1)
    for _ in range(200):
        r0, c0, r1, c1 = (int(v) for v in rng.integers(0, 40, size=4))
        px = line_pixels(r0, c0, r1, c1)
        assert px[0] == (r0, c0) and px[-1] == (r1, c1)
        for (ra, ca), (rb, cb) in zip(px[:-1], px[1:]):
            assert max(abs(ra - rb), abs(ca - cb)) == 1


@pytest.mark.parametrize("resolution", [16, 32, 64])
def test_scale_consistency_or_pooling(resolution, spread_face_landmarks):
    fine = landmarks_to_edge_map(spread_face_landmarks, 2 * resolution)
    pooled = fine.reshape(resolution, 2, resolution, 2).max(axis=(1, 3))
    coarse = landmarks_to_edge_map(spread_face_landmarks, resolution)
    assert not np.logical_and(coarse == 1, pooled == 0).any()


def test_scale_consistency_random_landmarks():
    rng = np.random.default_rng(3)
    for trial in range(25):
        lm = LandmarkSet(points=rng.uniform(0.02, 0.98, size=(68, 2)))
        for resolution in (16, 32):
            fine = landmarks_to_edge_map(lm, 2 * resolution)
            pooled = fine.reshape(resolution, 2, resolution, 2).max(axis=(1, 3))
            coarse = landmarks_to_edge_map(lm, resolution)
            assert not np.logical_and(coarse == 1, pooled == 0).any()


def test_edge_map_draws_seven_feature_groups(spread_face_landmarks):
    # the fixture face has disjoint features except the two lip loops,
    # which share the lips group
    from scipy import ndimage

    mask = landmarks_to_edge_map(spread_face_landmarks, 256)
    _, count = ndimage.label(mask, structure=np.ones((3, 3)))
    assert count == 8  # 7 features, lips contributing two loops
    assert mask.sum() > 0
    assert set(np.unique(mask)) <= {0, 1}


def test_edge_map_rejects_bad_inputs(spread_face_landmarks):
    with pytest.raises(ValueError):
        landmarks_to_edge_map(spread_face_landmarks, 12)
    with pytest.raises(ValueError):
        landmarks_to_edge_map(spread_face_landmarks, 4)
    bad = spread_face_landmarks.points.copy()
    bad[3] = [1.5, 0.2]
    with pytest.raises(ValueError):
        landmarks_to_edge_map(LandmarkSet(points=bad), 64)
    nan = spread_face_landmarks.points.copy()
    nan[10, 0] = np.nan
    with pytest.raises(ValueError):
        landmarks_to_edge_map(LandmarkSet(points=nan), 64)


def test_wrong_point_count_rejected():
    with pytest.raises(ValueError):
        LandmarkSet(points=np.zeros((67, 2)))


def test_any_valid_landmark_set_produces_nonempty_mask():
    rng = np.random.default_rng(12)
    for trial in range(30):
        lm = LandmarkSet(points=rng.uniform(0.0, 1.0, size=(68, 2)))
        for resolution in (8, 64, 1024):
            assert landmarks_to_edge_map(lm, resolution).sum() >= 1, (trial, resolution)


def test_filter_outliers_degenerate_and_spread(spread_face_landmarks):
    coincident = LandmarkSet(points=np.full((68, 2), 0.4), source_id="dot")
    kept, rejected = filter_outliers([coincident, spread_face_landmarks])
    assert rejected == [coincident]
    assert kept == [spread_face_landmarks]


def test_filter_outliers_planted_fixture(spread_face_landmarks):
    rng = np.random.default_rng(5)
    records = []
    planted = []
    base = spread_face_landmarks.points
    for i in range(100):
        jitter = rng.normal(0, 0.004, size=(68, 2))
        pts = np.clip(base + jitter, 0.0, 1.0)
        records.append(LandmarkSet(points=pts, source_id=f"ok-{i}"))
    # plant 7 degenerate sets at known positions
    for slot in (3, 17, 29, 44, 58, 71, 90):
        kind = slot % 3
        if kind == 0:  # collapsed bounding box
            pts = np.full((68, 2), 0.5) + rng.normal(0, 0.001, size=(68, 2))
        elif kind == 1:  # eye centers collapsed
            pts = base.copy()
            pts[36:48] = 0.5
        else:  # box covers essentially the whole frame
            pts = rng.uniform(0.0, 1.0, size=(68, 2))
            pts[0] = [0.001, 0.001]
            pts[1] = [0.999, 0.999]
        record = LandmarkSet(points=np.clip(pts, 0, 1), source_id=f"bad-{slot}")
        records[slot] = record
        planted.append(record)
    kept, rejected = filter_outliers(records)
    assert sorted(r.source_id for r in rejected) == sorted(r.source_id for r in planted)
    assert len(kept) == 93
    assert len(kept) + len(rejected) == len(records)


def test_filter_outliers_idempotent(spread_face_landmarks):
    rng = np.random.default_rng(9)
    records = [
        LandmarkSet(points=np.clip(spread_face_landmarks.points + rng.normal(0, 0.01, (68, 2)), 0, 1))
        for _ in range(20)
    ]
    records.append(LandmarkSet(points=np.full((68, 2), 0.2)))
    kept, _ = filter_outliers(records)
    kept_again, rejected_again = filter_outliers(kept)
    assert kept_again == kept
    assert rejected_again == []


def test_filter_outliers_empty():
    assert filter_outliers([]) == ([], [])


def test_parse_landmark_line_roundtrip(spread_face_landmarks):
    coords = " ".join(f"{x:.6f} {y:.6f}" for x, y in spread_face_landmarks.points)
    record = parse_landmark_line(f"face-1 {coords} gender=f age=31")
    assert record.source_id == "face-1"
    assert record.attributes == {"gender": "f", "age": "31"}
    assert np.allclose(record.points, spread_face_landmarks.points, atol=1e-6)


def test_parse_landmark_line_rejects_short():
    with pytest.raises(ValueError):
        parse_landmark_line("id 0.1 0.2 0.3")


def test_load_landmark_file(tmp_path, spread_face_landmarks):
    coords = " ".join(f"{x:.6f} {y:.6f}" for x, y in spread_face_landmarks.points)
    path = tmp_path / "landmarks.txt"
    path.write_text(f"# comment\na {coords}\n\nb {coords} tag=x\n")
    records = load_landmark_file(path)
    assert [r.source_id for r in records] == ["a", "b"]
    assert records[1].attributes == {"tag": "x"}
