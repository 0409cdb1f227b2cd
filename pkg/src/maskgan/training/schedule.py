"""Progressive-growing curriculum: a pure mapping from global step to the
active resolution, phase mode, and fade alpha."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class TrainSchedule:
    steps_per_phase: int
    fade_steps: int
    base_resolution: int
    max_resolution: int
    batch_by_resolution: dict[int, int]
    lr_by_resolution: dict[int, float]
    gp_lambda: float = 10.0
    critic_steps_per_gen: int = 1
    drift_epsilon: float = 1e-3

    def __post_init__(self):
        self.batch_by_resolution = {
            int(k): int(v) for k, v in self.batch_by_resolution.items()
        }
        self.lr_by_resolution = {
            int(k): float(v) for k, v in self.lr_by_resolution.items()
        }
        self.validate()

    def validate(self) -> None:
        if self.steps_per_phase < 1 or self.fade_steps < 1:
            raise ValueError("phase lengths must be positive")
        for r in self.resolutions():
            if self.batch_by_resolution.get(r, 0) < 1:
                raise ValueError(f"missing or non-positive batch size at resolution {r}")
            if self.lr_by_resolution.get(r, 0.0) <= 0.0:
                raise ValueError(f"missing or non-positive learning rate at resolution {r}")
        for r in self.resolutions():
            if r == self.base_resolution:
                continue
            if self.batch_by_resolution[r] * 2 != self.batch_by_resolution[r // 2]:
                raise ValueError(
                    f"batch sizes must halve per resolution doubling: "
                    f"{self.batch_by_resolution[r // 2]} at {r // 2} vs "
                    f"{self.batch_by_resolution[r]} at {r}"
                )

    def resolutions(self) -> list[int]:
        out = []
        r = self.base_resolution
        while r <= self.max_resolution:
            out.append(r)
            r *= 2
        return out

    def batch_for(self, resolution: int) -> int:
        return self.batch_by_resolution[resolution]

    def lr_for(self, resolution: int) -> float:
        return self.lr_by_resolution[resolution]

    @classmethod
    def from_json_dict(cls, data: dict) -> "TrainSchedule":
        return cls(
            steps_per_phase=data["steps_per_phase"],
            fade_steps=data["fade_steps"],
            base_resolution=data["base_resolution"],
            max_resolution=data["max_resolution"],
            batch_by_resolution=data["batch_by_resolution"],
            lr_by_resolution=data["lr_by_resolution"],
            gp_lambda=data.get("gp_lambda", 10.0),
            critic_steps_per_gen=data.get("critic_steps_per_gen", 1),
            drift_epsilon=data.get("drift_epsilon", 1e-3),
        )


@dataclass
class PhaseState:
    global_step: int
    resolution: int
    mode: str  # "fading" | "stable"
    alpha: float


def schedule_at(schedule: TrainSchedule, global_step: int) -> PhaseState:
    """Phase at a global step.

    Training is stable at the base resolution for one phase, then each
    doubling gets a linear fade-in (alpha 0 -> 1 over fade_steps) followed
    by a stable phase. Past the last phase the state stays stable at the
    maximum resolution.
    """
    if global_step < 0:
        raise ValueError("global_step must be >= 0")
    t = global_step
    if t < schedule.steps_per_phase:
        return PhaseState(global_step, schedule.base_resolution, "stable", 1.0)
    t -= schedule.steps_per_phase
    for resolution in schedule.resolutions()[1:]:
        if t < schedule.fade_steps:
            return PhaseState(global_step, resolution, "fading", t / schedule.fade_steps)
        t -= schedule.fade_steps
        if t < schedule.steps_per_phase:
            return PhaseState(global_step, resolution, "stable", 1.0)
        t -= schedule.steps_per_phase
    return PhaseState(global_step, schedule.max_resolution, "stable", 1.0)


def total_steps(schedule: TrainSchedule) -> int:
    """Steps until the final stable phase completes."""
    levels = len(schedule.resolutions())
    return schedule.steps_per_phase + (levels - 1) * (
        schedule.fade_steps + schedule.steps_per_phase
    )
