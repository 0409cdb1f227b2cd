import json
from pathlib import Path

import numpy as np
import pytest
import torch

import maskgan.training.loop as loop_module
from maskgan.checkpoint import load_checkpoint
from maskgan.data import build_synthetic_shard, downsample_shard, write_shard
from maskgan.models import build_discriminator, build_generator
from maskgan.training import (
    NonFiniteLossError,
    TrainSchedule,
    critic_loss,
    generator_loss,
    schedule_at,
    train,
)

TINY_SCHEDULE = TrainSchedule(
    steps_per_phase=10,
    fade_steps=10,
    base_resolution=8,
    max_resolution=16,
    batch_by_resolution={8: 16, 16: 8},
    lr_by_resolution={8: 1e-3, 16: 1e-3},
    gp_lambda=10.0,
)


@pytest.fixture(scope="module")
def dataset_root(tmp_path_factory):
    root = tmp_path_factory.mktemp("shards")
    shard16 = build_synthetic_shard(64, 16, seed=5)
    write_shard(shard16, root / "16")
    write_shard(downsample_shard(shard16, 8), root / "8")
    return root


def _read_log(path, drop=("wall",)):
    records = [json.loads(line) for line in Path(path).read_text().splitlines()]
    return [{k: v for k, v in r.items() if k not in drop} for r in records]


def test_short_run_produces_finite_log_and_checkpoint(desk_bundle, dataset_root, tmp_path):
    result = train(
        desk_bundle.generators["embedding"],
        desk_bundle.discriminator,
        TINY_SCHEDULE,
        dataset_root,
        tmp_path / "run",
        seed=3,
        max_steps=12,
        log_interval=3,
        checkpoint_interval=5,
    )
    records = _read_log(result.log_path)
    assert records
    for record in records:
        for key in ("critic_loss", "generator_loss", "gradient_penalty"):
            assert np.isfinite(record[key])
    arrays, manifest = load_checkpoint(result.checkpoint_path)
    assert manifest["step"] == 12
    assert any(k.startswith("generator/") for k in arrays)
    assert any(k.startswith("critic/") for k in arrays)
    assert any(k.startswith("opt_g/") for k in arrays)


def test_fixed_seed_runs_identical_logs(desk_bundle, dataset_root, tmp_path):
    kwargs = dict(max_steps=20, log_interval=4)
    a = train(
        desk_bundle.generators["no_embedding"],
        desk_bundle.discriminator,
        TINY_SCHEDULE,
        dataset_root,
        tmp_path / "a",
        seed=13,
        **kwargs,
    )
    b = train(
        desk_bundle.generators["no_embedding"],
        desk_bundle.discriminator,
        TINY_SCHEDULE,
        dataset_root,
        tmp_path / "b",
        seed=13,
        **kwargs,
    )
    assert _read_log(a.log_path) == _read_log(b.log_path)
    arrays_a, _ = load_checkpoint(a.checkpoint_path)
    arrays_b, _ = load_checkpoint(b.checkpoint_path)
    assert all(np.array_equal(arrays_a[k], arrays_b[k]) for k in arrays_a)


def test_resume_matches_uninterrupted_phase_state(desk_bundle, dataset_root, tmp_path):
    first = train(
        desk_bundle.generators["embedding"],
        desk_bundle.discriminator,
        TINY_SCHEDULE,
        dataset_root,
        tmp_path / "part1",
        seed=7,
        max_steps=15,
    )
    _, manifest = load_checkpoint(first.checkpoint_path)
    assert manifest["step"] == 15
    resumed = train(
        desk_bundle.generators["embedding"],
        desk_bundle.discriminator,
        TINY_SCHEDULE,
        dataset_root,
        tmp_path / "part1",
        seed=7,
        max_steps=22,
        resume=first.checkpoint_path,
    )
    assert resumed.steps_run == 7
    phase_resumed = resumed.final_phase
    phase_direct = schedule_at(TINY_SCHEDULE, 22)
    assert (phase_resumed.resolution, phase_resumed.mode, phase_resumed.alpha) == (
        phase_direct.resolution,
        phase_direct.mode,
        phase_direct.alpha,
    )
    _, manifest2 = load_checkpoint(resumed.checkpoint_path)
    assert manifest2["step"] == 22
    assert manifest2["phase"]["resolution"] == phase_direct.resolution


def test_phase_transition_reaches_higher_resolution(desk_bundle, dataset_root, tmp_path):
    result = train(
        desk_bundle.generators["embedding"],
        desk_bundle.discriminator,
        TINY_SCHEDULE,
        dataset_root,
        tmp_path / "full",
        seed=1,
        log_interval=2,
    )
    records = _read_log(result.log_path)
    resolutions = {r["resolution"] for r in records}
    assert resolutions == {8, 16}
    fade_records = [r for r in records if 0.0 < r["alpha"] < 1.0]
    assert fade_records
    _, manifest = load_checkpoint(result.checkpoint_path)
    assert manifest["phase"] == {"resolution": 16, "mode": "stable"}


def test_missing_shard_resolution_errors(desk_bundle, tmp_path):
    empty = tmp_path / "nodata"
    empty.mkdir()
    with pytest.raises(FileNotFoundError, match="lacks shards"):
        train(
            desk_bundle.generators["embedding"],
            desk_bundle.discriminator,
            TINY_SCHEDULE,
            empty,
            tmp_path / "out",
            seed=0,
            max_steps=5,
        )


def test_nan_abort_retains_last_good_checkpoint(
    desk_bundle, dataset_root, tmp_path, monkeypatch
):
    calls = {"n": 0}
    real_critic_loss = loop_module.critic_loss

    def exploding(*args, **kwargs):
        calls["n"] += 1
        if calls["n"] >= 4:
            raise NonFiniteLossError("non-finite critic loss")
        return real_critic_loss(*args, **kwargs)

    monkeypatch.setattr(loop_module, "critic_loss", exploding)
    out = tmp_path / "abort"
    with pytest.raises(NonFiniteLossError):
        train(
            desk_bundle.generators["embedding"],
            desk_bundle.discriminator,
            TINY_SCHEDULE,
            dataset_root,
            out,
            seed=2,
            max_steps=10,
        )
    arrays, manifest = load_checkpoint(out / "checkpoint.ckpt")
    assert manifest["step"] <= 3
    assert all(np.isfinite(v).all() for v in arrays.values())


@pytest.mark.slow
def test_200_step_smoke_run_finite_and_gp_bounded(desk_bundle, tmp_path):
    # 200 steps on the synthetic 8^2 shard at the real desk batch size; all
    # logged losses finite, and the gradient penalty settles within
    # [0, 10*lambda] once past the first 100 steps
    root = tmp_path / "data"
    write_shard(build_synthetic_shard(256, 8, seed=9), root / "8")
    schedule = TrainSchedule(
        steps_per_phase=3000,
        fade_steps=3000,
        base_resolution=8,
        max_resolution=8,
        batch_by_resolution={8: 64},
        lr_by_resolution={8: 1e-3},
        gp_lambda=10.0,
    )
    result = train(
        desk_bundle.generators["embedding"],
        desk_bundle.discriminator,
        schedule,
        root,
        tmp_path / "run",
        seed=0,
        max_steps=200,
        log_interval=10,
    )
    records = _read_log(result.log_path)
    assert records[-1]["step"] == 199
    for record in records:
        for key in ("critic_loss", "generator_loss", "gradient_penalty"):
            assert np.isfinite(record[key]), record
    late = [r["gradient_penalty"] for r in records if r["step"] >= 100]
    assert late
    assert all(0.0 <= gp <= 100.0 for gp in late), late


def test_optimizer_steps_touch_only_their_module(desk_bundle, dataset_root):
    from maskgan.data import load_shard

    generator = build_generator(desk_bundle.generators["embedding"], seed=21)
    critic = build_discriminator(desk_bundle.discriminator, seed=22)
    g_opt = torch.optim.Adam(generator.parameters(), lr=1e-3, betas=(0.0, 0.99))
    d_opt = torch.optim.Adam(critic.parameters(), lr=1e-3, betas=(0.0, 0.99))

    shard = load_shard(dataset_root / "8")
    masks = torch.from_numpy(shard.masks[:8]).float().unsqueeze(1)
    images = torch.from_numpy(shard.images[:8]).permute(0, 3, 1, 2)
    z = torch.randn(8, 128)

    def critic_fn(x, m):
        return critic(x, m, 8, 1.0)

    def generator_fn(zz, m):
        return generator(zz, m, 8, 1.0)

    g_before = {n: p.detach().clone() for n, p in generator.named_parameters()}
    d_opt.zero_grad()
    loss = critic_loss(critic_fn, generator_fn, images, masks, z, gp_lambda=10.0)
    loss.backward()
    d_opt.step()
    assert all(
        torch.equal(g_before[n], p) for n, p in generator.named_parameters()
    ), "critic update modified generator weights"

    d_before = {n: p.detach().clone() for n, p in critic.named_parameters()}
    g_opt.zero_grad()
    gl = generator_loss(critic_fn, generator_fn, masks, z)
    gl.backward()
    g_opt.step()
    assert all(torch.equal(d_before[n], p) for n, p in critic.named_parameters()), (
        "generator update modified critic weights"
    )
    assert any(
        not torch.equal(g_before[n], p) for n, p in generator.named_parameters()
    ), "generator update had no effect"
