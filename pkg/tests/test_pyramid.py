import numpy as np
import pytest

from maskgan.swd import collapse_pyramid, laplacian_pyramid


def test_constant_image_zero_detail_bands():
    for value in (0.5, -0.25, 0.75):
        image = np.full((64, 64, 3), value)
        levels = laplacian_pyramid(image, 16)
        for level in levels[:-1]:
            assert not level.is_residual
            assert np.all(level.band == 0.0)
        assert levels[-1].is_residual
        assert np.all(levels[-1].band == value)


def test_level_resolutions_512_to_16():
    image = np.zeros((512, 512, 3))
    levels = laplacian_pyramid(image, 16)
    assert [lv.resolution for lv in levels] == [512, 256, 128, 64, 32, 16]
    assert [lv.band.shape[0] for lv in levels] == [512, 256, 128, 64, 32, 16]
    assert sum(lv.is_residual for lv in levels) == 1


def test_reconstruction_identity_random_images():
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(100):
        image = rng.uniform(-1, 1, size=(64, 64, 3))
        levels = laplacian_pyramid(image, 8)
        recovered = collapse_pyramid(levels)
        worst = max(worst, float(np.abs(recovered - image).max()))
    assert worst <= 1e-5


def test_reconstruction_structured_image():
    mask, image = __import__("maskgan.data", fromlist=["make_synthetic_pair"]).make_synthetic_pair(7, 64)
    levels = laplacian_pyramid(image.astype(np.float64), 16)
    recovered = collapse_pyramid(levels)
    assert np.abs(recovered - image).max() <= 1e-5


def test_single_level_pyramid():
    rng = np.random.default_rng(1)
    image = rng.uniform(-1, 1, size=(16, 16, 3))
    levels = laplacian_pyramid(image, 16)
    assert len(levels) == 1
    assert levels[0].is_residual
    assert np.array_equal(collapse_pyramid(levels), image)


def test_invalid_inputs():
    image = np.zeros((32, 32, 3))
    with pytest.raises(ValueError):
        laplacian_pyramid(image, 64)  # min above input
    with pytest.raises(ValueError):
        laplacian_pyramid(image, 12)  # not a power of two
    with pytest.raises(ValueError):
        laplacian_pyramid(np.zeros((30, 30, 3)), 8)
    with pytest.raises(ValueError):
        collapse_pyramid([])
