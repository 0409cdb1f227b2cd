from pathlib import Path

import numpy as np
import pytest
import torch

torch.set_num_threads(2)

REPO_ROOT = Path(__file__).resolve().parent.parent
TABLE1_DIR = REPO_ROOT / "artifacts" / "table1"


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(num, title): acceptance criterion identifier"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    num, title = marker.args
    status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
    terminal = item.config.pluginmanager.get_plugin("terminalreporter")
    if terminal is not None:
        terminal.write_line(f"[acceptance] criterion {num}: {status} - {title}")


@pytest.fixture(scope="session")
def desk_bundle():
    from maskgan.models import load_profile

    return load_profile("desk")


@pytest.fixture(scope="session")
def spread_face_landmarks():
    """A hand-placed well-proportioned 68-point face in the unit square."""
    from maskgan.data import LANDMARK_COUNT, LandmarkSet

    pts = np.zeros((LANDMARK_COUNT, 2))
    # jaw 0-16: open arc across the lower half
    t = np.linspace(np.pi * 0.15, np.pi * 0.85, 17)
    pts[0:17, 0] = 0.5 + 0.38 * np.cos(t[::-1])
    pts[0:17, 1] = 0.45 + 0.42 * np.sin(t[::-1])
    # brows 17-21 / 22-26
    pts[17:22, 0] = np.linspace(0.22, 0.42, 5)
    pts[17:22, 1] = 0.30 - 0.03 * np.sin(np.linspace(0, np.pi, 5))
    pts[22:27, 0] = np.linspace(0.58, 0.78, 5)
    pts[22:27, 1] = 0.30 - 0.03 * np.sin(np.linspace(0, np.pi, 5))
    # nose 27-35: bridge then base
    pts[27:31, 0] = 0.5
    pts[27:31, 1] = np.linspace(0.36, 0.52, 4)
    pts[31:36, 0] = np.linspace(0.44, 0.56, 5)
    pts[31:36, 1] = 0.56
    # eyes 36-41 / 42-47: hexagonal loops
    angles = np.linspace(0, 2 * np.pi, 6, endpoint=False)
    pts[36:42, 0] = 0.33 + 0.05 * np.cos(angles)
    pts[36:42, 1] = 0.38 + 0.03 * np.sin(angles)
    pts[42:48, 0] = 0.67 + 0.05 * np.cos(angles)
    pts[42:48, 1] = 0.38 + 0.03 * np.sin(angles)
    # lips 48-59 outer loop, 60-67 inner loop
    angles12 = np.linspace(0, 2 * np.pi, 12, endpoint=False)
    pts[48:60, 0] = 0.5 + 0.12 * np.cos(angles12)
    pts[48:60, 1] = 0.70 + 0.05 * np.sin(angles12)
    angles8 = np.linspace(0, 2 * np.pi, 8, endpoint=False)
    pts[60:68, 0] = 0.5 + 0.07 * np.cos(angles8)
    pts[60:68, 1] = 0.70 + 0.025 * np.sin(angles8)
    return LandmarkSet(points=pts, source_id="fixture-face")


@pytest.fixture(scope="session")
def small_shard():
    from maskgan.data import build_synthetic_shard

    return build_synthetic_shard(48, 32, seed=11)
