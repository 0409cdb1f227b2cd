from .schedule import PhaseState, TrainSchedule, schedule_at, total_steps
from .losses import (
    NonFiniteLossError,
    critic_loss,
    generator_loss,
    gradient_penalty,
)
from .loop import TrainLogRecord, TrainResult, train

__all__ = [
    "PhaseState",
    "TrainSchedule",
    "schedule_at",
    "total_steps",
    "NonFiniteLossError",
    "critic_loss",
    "generator_loss",
    "gradient_penalty",
    "TrainLogRecord",
    "TrainResult",
    "train",
]
