"""Progressive adversarial training with checkpointing and JSONL metrics."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
import torch

from ..checkpoint import load_checkpoint, save_checkpoint
from ..models import build_discriminator, build_generator, config_hash
from ..models.config import DiscriminatorConfig, GeneratorConfig
from ..models.layers import downsample2x, upsample2x
from .losses import critic_loss, generator_loss
from .schedule import PhaseState, TrainSchedule, schedule_at, total_steps
from ..data.shards import batch_iterator, load_shard


@dataclass
class TrainLogRecord:
    step: int
    resolution: int
    alpha: float
    critic_loss: float
    generator_loss: float
    gradient_penalty: float
    wall: float

    def to_json(self) -> str:
        return json.dumps(asdict(self))


@dataclass
class TrainResult:
    checkpoint_path: Path
    log_path: Path
    steps_run: int
    final_phase: PhaseState


def _sorted_params(module: torch.nn.Module) -> list[torch.nn.Parameter]:
    return [p for _, p in sorted(module.named_parameters())]


def _optimizer_arrays(prefix: str, opt: torch.optim.Adam) -> dict[str, np.ndarray]:
    arrays = {}
    for idx, state in opt.state_dict()["state"].items():
        for key, value in state.items():
            arrays[f"{prefix}/{idx}/{key}"] = np.asarray(
                value.detach().cpu().numpy() if torch.is_tensor(value) else value
            )
    return arrays


def _restore_optimizer(prefix: str, opt: torch.optim.Adam, arrays: dict[str, np.ndarray]):
    state: dict[int, dict] = {}
    for name, value in arrays.items():
        if not name.startswith(prefix + "/"):
            continue
        _, idx, key = name.split("/", 2)
        entry = state.setdefault(int(idx), {})
        entry[key] = torch.from_numpy(np.asarray(value))
    if state:
        sd = opt.state_dict()
        sd["state"] = state
        opt.load_state_dict(sd)


def _fade_blend_real(images: torch.Tensor, alpha: float) -> torch.Tensor:
    # Smooths the real distribution while a new resolution fades in, matching
    # what the generator's blended head can produce at small alpha.
    return alpha * images + (1.0 - alpha) * upsample2x(downsample2x(images))


def train(
    generator_config: GeneratorConfig,
    discriminator_config: DiscriminatorConfig,
    schedule: TrainSchedule,
    dataset_root: str | Path,
    out_dir: str | Path,
    seed: int,
    *,
    max_steps: int | None = None,
    log_interval: int = 50,
    checkpoint_interval: int = 1000,
    resume: str | Path | None = None,
    fade_real_blend: bool = True,
) -> TrainResult:
    """Run WGAN-GP training and return the final checkpoint + log paths.

    Progressive variants follow the schedule's phase curriculum; the
    pix2pix baseline trains directly at the maximum resolution for the
    same number of steps. Deterministic for a fixed seed on one device.
    A non-finite loss aborts with the last good checkpoint retained.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    dataset_root = Path(dataset_root)
    log_path = out_dir / "train_log.jsonl"
    ckpt_path = out_dir / "checkpoint.ckpt"

    progressive = generator_config.variant != "pix2pix_baseline"
    torch.manual_seed(seed)
    generator = build_generator(generator_config, seed + 1)
    critic = build_discriminator(discriminator_config, seed + 2)
    z_rng = torch.Generator().manual_seed(seed + 3)
    eps_rng = torch.Generator().manual_seed(seed + 4)

    g_params = _sorted_params(generator)
    d_params = _sorted_params(critic)
    base_lr = schedule.lr_for(schedule.base_resolution)
    g_opt = torch.optim.Adam(g_params, lr=base_lr, betas=(0.0, 0.99), eps=1e-8)
    d_opt = torch.optim.Adam(d_params, lr=base_lr, betas=(0.0, 0.99), eps=1e-8)

    steps_total = total_steps(schedule)
    if max_steps is not None:
        steps_total = min(steps_total, max_steps)

    start_step = 0
    if resume is not None:
        arrays, manifest = load_checkpoint(resume)
        with torch.no_grad():
            for name, p in generator.named_parameters():
                p.copy_(torch.from_numpy(arrays[f"generator/{name}"]))
            for name, p in critic.named_parameters():
                p.copy_(torch.from_numpy(arrays[f"critic/{name}"]))
        _restore_optimizer("opt_g", g_opt, arrays)
        _restore_optimizer("opt_d", d_opt, arrays)
        start_step = int(manifest["step"])

    if progressive:
        last = schedule_at(schedule, max(steps_total - 1, 0)).resolution
        needed = [r for r in schedule.resolutions() if r <= last]
    else:
        needed = [schedule.max_resolution]
    missing = [r for r in needed if not (dataset_root / str(r) / "manifest.json").exists()]
    if missing:
        raise FileNotFoundError(
            f"dataset root {dataset_root} lacks shards at resolutions {missing}"
        )

    shards = {}
    iterators: dict[int, object] = {}

    def batches_for(resolution: int):
        if resolution not in iterators:
            if resolution not in shards:
                shards[resolution] = load_shard(dataset_root / str(resolution))
            iterators[resolution] = batch_iterator(
                shards[resolution], schedule.batch_for(resolution), seed + resolution
            )
        return iterators[resolution]

    def phase_for(step: int) -> PhaseState:
        if progressive:
            return schedule_at(schedule, step)
        return PhaseState(step, schedule.max_resolution, "stable", 1.0)

    def save(step: int, phase: PhaseState) -> Path:
        arrays = {
            f"generator/{name}": p.detach().cpu().numpy()
            for name, p in generator.named_parameters()
        }
        arrays.update(
            {f"critic/{name}": p.detach().cpu().numpy() for name, p in critic.named_parameters()}
        )
        arrays.update(_optimizer_arrays("opt_g", g_opt))
        arrays.update(_optimizer_arrays("opt_d", d_opt))
        return save_checkpoint(
            ckpt_path,
            arrays,
            generator_config=generator_config.to_json_dict(),
            config_hash=config_hash(generator_config),
            step=step,
            phase_resolution=phase.resolution,
            phase_mode=phase.mode,
            extra={"discriminator_config": discriminator_config.to_json_dict()},
        )

    current_resolution = None
    log_file = open(log_path, "a" if resume is not None else "w")
    phase = phase_for(start_step)
    save(start_step, phase)  # a last-good checkpoint exists even if step 1 aborts
    try:
        for step in range(start_step, steps_total):
            phase = phase_for(step)
            if phase.resolution != current_resolution:
                current_resolution = phase.resolution
                lr = schedule.lr_for(current_resolution)
                for group in g_opt.param_groups:
                    group["lr"] = lr
                for group in d_opt.param_groups:
                    group["lr"] = lr
            data = batches_for(current_resolution)
            res, alpha = phase.resolution, phase.alpha

            def critic_fn(images, masks):
                return critic(images, masks, res, alpha)

            def generator_fn(z, masks):
                return generator(z, masks, res, alpha)

            def pull_batch():
                mask_np, img_np = next(data)
                masks = torch.from_numpy(mask_np).float().unsqueeze(1)
                images = torch.from_numpy(img_np).permute(0, 3, 1, 2).contiguous()
                if fade_real_blend and phase.mode == "fading":
                    images = _fade_blend_real(images, alpha)
                return masks, images

            gp_value = 0.0
            d_loss_value = 0.0
            for _ in range(schedule.critic_steps_per_gen):
                masks, images = pull_batch()
                z = (
                    torch.randn(images.shape[0], generator_config.latent_dim, generator=z_rng)
                    if progressive
                    else None
                )
                d_opt.zero_grad(set_to_none=True)
                loss, parts = critic_loss(
                    critic_fn,
                    generator_fn,
                    images,
                    masks,
                    z,
                    gp_lambda=schedule.gp_lambda,
                    drift_epsilon=schedule.drift_epsilon,
                    rng=eps_rng,
                    return_parts=True,
                )
                loss.backward()
                d_opt.step()
                gp_value = parts["gradient_penalty"]
                d_loss_value = float(loss.detach())

            masks, _ = pull_batch()
            z = (
                torch.randn(masks.shape[0], generator_config.latent_dim, generator=z_rng)
                if progressive
                else None
            )
            g_opt.zero_grad(set_to_none=True)
            g_loss = generator_loss(critic_fn, generator_fn, masks, z)
            g_loss.backward()
            g_opt.step()

            is_boundary = phase_for(step + 1).resolution != phase.resolution
            if (
                step % log_interval == 0
                or step == steps_total - 1
                or is_boundary
            ):
                record = TrainLogRecord(
                    step=step,
                    resolution=phase.resolution,
                    alpha=phase.alpha,
                    critic_loss=d_loss_value,
                    generator_loss=float(g_loss.detach()),
                    gradient_penalty=gp_value,
                    wall=time.time(),
                )
                log_file.write(record.to_json() + "\n")
                log_file.flush()
            if is_boundary or (step + 1) % checkpoint_interval == 0:
                save(step + 1, phase_for(step + 1))
    finally:
        log_file.close()

    final_phase = phase_for(steps_total)
    save(steps_total, final_phase)
    return TrainResult(
        checkpoint_path=ckpt_path,
        log_path=log_path,
        steps_run=steps_total - start_step,
        final_phase=final_phase,
    )
