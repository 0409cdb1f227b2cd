#!/usr/bin/env python3
"""A miniature progressive training run.

Prepares shards at 8/16, trains the embedding generator through the base
phase and into the first fade-in with a shortened schedule, and prints
the loss trajectory. Finishes in a couple of minutes on a laptop CPU;
see run_table1.py for the full desk-scale experiment.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from maskgan.data import build_synthetic_shard, downsample_shard, write_shard
from maskgan.models import load_profile
from maskgan.training import TrainSchedule, train


def main() -> int:
    out = Path("runs/demo04")
    data = out / "data"
    shard16 = build_synthetic_shard(count=256, resolution=16, seed=0)
    write_shard(shard16, data / "16")
    write_shard(downsample_shard(shard16, 8), data / "8")

    bundle = load_profile("desk")
    schedule_dict = dict(bundle.schedule)
    schedule_dict.update(steps_per_phase=120, fade_steps=120, max_resolution=16,
                         batch_by_resolution={"8": 32, "16": 16})
    schedule = TrainSchedule.from_json_dict(schedule_dict)

    result = train(
        bundle.generators["embedding"],
        bundle.discriminator,
        schedule,
        data,
        out / "run",
        seed=0,
        log_interval=30,
    )
    print(f"ran {result.steps_run} steps; final phase "
          f"{result.final_phase.resolution}^2 {result.final_phase.mode}")
    for line in Path(result.log_path).read_text().splitlines():
        record = json.loads(line)
        print(f"  step {record['step']:4d} res {record['resolution']:2d} "
              f"alpha {record['alpha']:.2f} critic {record['critic_loss']:+8.3f} "
              f"gen {record['generator_loss']:+8.3f} gp {record['gradient_penalty']:6.3f}")
    print(f"checkpoint: {result.checkpoint_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
