import numpy as np
import pytest

from maskgan.data import build_synthetic_shard
from maskgan.swd import (
    array_source,
    projection_directions,
    sliced_wasserstein,
    swd_report,
)


def brute_force_swd(a, b, directions):
    """Independent oracle: explicit loops, python sorts, replayed directions."""
    total = 0.0
    for direction in directions:
        pa = sorted(float(np.dot(x, direction)) for x in a)
        pb = sorted(float(np.dot(x, direction)) for x in b)
        total += sum(abs(u - v) for u, v in zip(pa, pb)) / len(pa)
    return total / len(directions)


def test_identical_sets_zero_exactly():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(40, 6))
    assert sliced_wasserstein(a, a.copy(), projections=64, seed=1) == 0.0


def test_one_dimensional_shifted_sets():
    # {0,1} vs {1,2}: sorted matching pairs |0-1| and |1-2|, mean 1 for the
    # +1 direction (and by symmetry for -1)
    a = np.array([[0.0], [1.0]])
    b = np.array([[1.0], [2.0]])
    assert sliced_wasserstein(a, b, projections=8, seed=0) == pytest.approx(1.0)


def test_symmetry_exact():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(30, 4))
    b = rng.normal(size=(30, 4)) + 0.5
    ab = sliced_wasserstein(a, b, projections=128, seed=7)
    ba = sliced_wasserstein(b, a, projections=128, seed=7)
    assert ab == ba
    assert ab >= 0.0


def test_matches_brute_force_oracle_200_instances():
    rng = np.random.default_rng(42)
    for trial in range(200):
        n = int(rng.integers(2, 65))
        d = int(rng.integers(1, 5))
        a = rng.normal(size=(n, d))
        b = rng.normal(size=(n, d)) * rng.uniform(0.5, 2.0) + rng.normal(size=d)
        seed = int(rng.integers(0, 2**31))
        projections = int(rng.integers(4, 40))
        fast = sliced_wasserstein(a, b, projections=projections, seed=seed)
        oracle = brute_force_swd(a, b, projection_directions(d, projections, seed))
        assert fast == pytest.approx(oracle, abs=1e-6), trial


def test_size_and_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        sliced_wasserstein(np.zeros((4, 3)), np.zeros((5, 3)))
    with pytest.raises(ValueError):
        sliced_wasserstein(np.zeros((4, 3)), np.zeros((4, 2)))


def test_noise_monotonicity_19_of_20():
    rng = np.random.default_rng(11)
    base = rng.normal(size=(256, 8))
    wins = 0
    for trial in range(20):
        trial_rng = np.random.default_rng(100 + trial)
        noise = trial_rng.normal(size=base.shape)
        near = sliced_wasserstein(base, base + 0.05 * noise, projections=128, seed=trial)
        far = sliced_wasserstein(base, base + 0.40 * noise, projections=128, seed=trial)
        wins += int(near < far)
    assert wins >= 19


def test_projection_directions_unit_norm():
    directions = projection_directions(147, 512, seed=5)
    assert directions.shape == (512, 147)
    assert np.allclose(np.linalg.norm(directions, axis=1), 1.0, atol=1e-12)


# --- report protocol ---------------------------------------------------


def test_report_batch_count_protocol():
    # ceil(8192 / 240) = 35 batches, final batch smaller
    calls = []

    def source(n):
        calls.append(n)
        return np.zeros((n, 16, 16, 3))

    def other(n):
        return np.zeros((n, 16, 16, 3))

    report = swd_report(
        source, other, 8192, 240, min_resolution=16, patches_per_image=4, patch_size=7,
        projections=4,
    )
    assert report.batches == 35
    assert len(calls) == 35
    assert calls[:-1] == [240] * 34
    assert calls[-1] == 8192 - 240 * 34
    assert report.pairs == 8192


def test_report_same_source_zero(small_shard):
    images = small_shard.images[:24]
    report = swd_report(
        array_source(images),
        array_source(images.copy()),
        24,
        12,
        min_resolution=16,
        patches_per_image=16,
        projections=32,
        seed=3,
    )
    assert sorted(report.levels) == [16, 32]
    for value in report.levels.values():
        assert value == pytest.approx(0.0, abs=1e-12)
    assert report.average == pytest.approx(0.0, abs=1e-12)


def test_report_real_halves_below_noise():
    shard = build_synthetic_shard(96, 32, seed=21)
    first, second = shard.images[:32], shard.images[32:64]
    rng = np.random.default_rng(5)
    noisy = np.clip(first + rng.normal(0, 0.5, first.shape), -1, 1)
    floor = swd_report(
        array_source(first), array_source(second), 32, 16,
        min_resolution=16, patches_per_image=32, projections=64, seed=9,
    )
    against_noise = swd_report(
        array_source(first), array_source(noisy), 32, 16,
        min_resolution=16, patches_per_image=32, projections=64, seed=9,
    )
    assert floor.average > 0.0
    assert floor.average < against_noise.average


def test_report_average_is_mean_of_levels(small_shard):
    report = swd_report(
        array_source(small_shard.images[:16]),
        array_source(small_shard.images[16:32]),
        16,
        8,
        min_resolution=16,
        patches_per_image=16,
        projections=16,
        seed=1,
    )
    assert report.average == pytest.approx(np.mean(list(report.levels.values())))
    assert all(v >= 0 for v in report.levels.values())


def test_report_determinism(small_shard):
    kwargs = dict(
        min_resolution=16, patches_per_image=16, projections=16, seed=77
    )
    r1 = swd_report(
        array_source(small_shard.images[:16]),
        array_source(small_shard.images[16:32]),
        16, 8, **kwargs,
    )
    r2 = swd_report(
        array_source(small_shard.images[:16]),
        array_source(small_shard.images[16:32]),
        16, 8, **kwargs,
    )
    assert r1.levels == r2.levels
    assert r1.to_json() == r2.to_json()


def test_report_insufficient_source_errors(small_shard):
    with pytest.raises(ValueError, match="exhausted"):
        swd_report(
            array_source(small_shard.images[:8]),
            array_source(small_shard.images[:8]),
            16,
            8,
            min_resolution=16,
            patches_per_image=4,
            projections=4,
        )


def test_report_json_roundtrip(tmp_path, small_shard):
    from maskgan.swd import SWDReport

    report = swd_report(
        array_source(small_shard.images[:8]),
        array_source(small_shard.images[8:16]),
        8, 8, min_resolution=16, patches_per_image=8, projections=8, seed=2,
    )
    path = report.write(tmp_path / "report.json")
    loaded = SWDReport.from_json(path.read_text())
    assert loaded == report
