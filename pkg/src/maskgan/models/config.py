"""Architecture configuration: explicit per-resolution channel maps, no
hidden defaults. Shipped profiles live in maskgan/profiles/*.json."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

GENERATOR_VARIANTS = ("embedding", "no_embedding", "pix2pix_baseline")


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def _resolutions(base: int, top: int) -> list[int]:
    out = []
    r = base
    while r <= top:
        out.append(r)
        r *= 2
    return out


@dataclass
class GeneratorConfig:
    variant: str
    max_resolution: int
    latent_dim: int
    embedding_dim: int
    latent_channels: dict[int, int]
    mask_channels: dict[int, int]
    base_resolution: int = 8
    skip_width: int = 8

    def __post_init__(self):
        self.latent_channels = {int(k): int(v) for k, v in self.latent_channels.items()}
        self.mask_channels = {int(k): int(v) for k, v in self.mask_channels.items()}
        self.validate()

    def validate(self) -> None:
        if self.variant not in GENERATOR_VARIANTS:
            raise ValueError(f"unknown generator variant {self.variant!r}")
        if not (_is_power_of_two(self.base_resolution) and _is_power_of_two(self.max_resolution)):
            raise ValueError("base and max resolutions must be powers of two")
        if self.max_resolution < self.base_resolution:
            raise ValueError("max_resolution must be >= base_resolution")
        wants_embedding = self.variant == "embedding"
        if wants_embedding != (self.embedding_dim > 0):
            raise ValueError(
                f"variant {self.variant!r} requires embedding_dim "
                f"{'> 0' if wants_embedding else '== 0'}, got {self.embedding_dim}"
            )
        if self.variant == "pix2pix_baseline" and self.latent_dim != 0:
            raise ValueError("pix2pix_baseline takes no latent input (latent_dim must be 0)")
        if self.variant != "pix2pix_baseline" and self.latent_dim <= 0:
            raise ValueError("latent_dim must be positive for latent-driven variants")
        for name, schedule in (("latent", self.latent_channels), ("mask", self.mask_channels)):
            missing = [r for r in self.resolutions() if r not in schedule]
            if missing:
                raise ValueError(f"{name} channel schedule missing resolutions {missing}")
        short = [
            r for r in self.resolutions() if self.mask_channels[r] < self.skip_width
        ]
        if short:
            raise ValueError(
                f"mask channel budget below skip width {self.skip_width} at resolutions {short}"
            )

    def resolutions(self) -> list[int]:
        return _resolutions(self.base_resolution, self.max_resolution)

    def decoder_skip_width(self, resolution: int) -> int:
        """Mask-feature channels concatenated onto the latent path at one
        decoder level (full width for the pix2pix baseline, fixed slice
        otherwise)."""
        if self.variant == "pix2pix_baseline":
            return self.mask_channels[resolution // 2]
        return self.skip_width

    def to_json_dict(self) -> dict:
        return {
            "variant": self.variant,
            "base_resolution": self.base_resolution,
            "max_resolution": self.max_resolution,
            "latent_dim": self.latent_dim,
            "embedding_dim": self.embedding_dim,
            "skip_width": self.skip_width,
            "latent_channels": {str(k): v for k, v in sorted(self.latent_channels.items())},
            "mask_channels": {str(k): v for k, v in sorted(self.mask_channels.items())},
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "GeneratorConfig":
        return cls(
            variant=data["variant"],
            base_resolution=data.get("base_resolution", 8),
            max_resolution=data["max_resolution"],
            latent_dim=data["latent_dim"],
            embedding_dim=data["embedding_dim"],
            skip_width=data.get("skip_width", 8),
            latent_channels=data["latent_channels"],
            mask_channels=data["mask_channels"],
        )


@dataclass
class DiscriminatorConfig:
    max_resolution: int
    channels: dict[int, int]
    base_resolution: int = 8
    conditional_input: bool = True
    minibatch_stddev: bool = True

    def __post_init__(self):
        self.channels = {int(k): int(v) for k, v in self.channels.items()}
        self.validate()

    def validate(self) -> None:
        if not (_is_power_of_two(self.base_resolution) and _is_power_of_two(self.max_resolution)):
            raise ValueError("base and max resolutions must be powers of two")
        if self.max_resolution < self.base_resolution:
            raise ValueError("max_resolution must be >= base_resolution")
        missing = [r for r in self.resolutions() if r not in self.channels]
        if missing:
            raise ValueError(f"critic channel schedule missing resolutions {missing}")

    def resolutions(self) -> list[int]:
        return _resolutions(self.base_resolution, self.max_resolution)

    def input_channels(self) -> int:
        return 4 if self.conditional_input else 3

    def to_json_dict(self) -> dict:
        return {
            "base_resolution": self.base_resolution,
            "max_resolution": self.max_resolution,
            "conditional_input": self.conditional_input,
            "minibatch_stddev": self.minibatch_stddev,
            "channels": {str(k): v for k, v in sorted(self.channels.items())},
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DiscriminatorConfig":
        return cls(
            base_resolution=data.get("base_resolution", 8),
            max_resolution=data["max_resolution"],
            conditional_input=data.get("conditional_input", True),
            minibatch_stddev=data.get("minibatch_stddev", True),
            channels=data["channels"],
        )


def config_hash(config: GeneratorConfig) -> str:
    canonical = json.dumps(config.to_json_dict(), sort_keys=True)
    return hashlib.sha256(canonical.encode()).hexdigest()


@dataclass
class ProfileBundle:
    """One named scale: generator configs per variant, critic, schedule."""

    name: str
    generators: dict[str, GeneratorConfig]
    discriminator: DiscriminatorConfig
    schedule: dict = field(default_factory=dict)

    @classmethod
    def from_json_dict(cls, name: str, data: dict) -> "ProfileBundle":
        return cls(
            name=name,
            generators={
                variant: GeneratorConfig.from_json_dict(cfg)
                for variant, cfg in data["generators"].items()
            },
            discriminator=DiscriminatorConfig.from_json_dict(data["discriminator"]),
            schedule=data.get("schedule", {}),
        )


def profile_names() -> list[str]:
    pkg = resources.files("maskgan.profiles")
    return sorted(p.name[:-5] for p in pkg.iterdir() if p.name.endswith(".json"))


def load_profile(name_or_path: str | Path) -> ProfileBundle:
    """Load a profile bundle by shipped name (`desk`, `paper`) or file path."""
    path = Path(name_or_path)
    if path.suffix == ".json" and path.exists():
        data = json.loads(path.read_text())
        return ProfileBundle.from_json_dict(path.stem, data)
    pkg = resources.files("maskgan.profiles")
    candidate = pkg / f"{name_or_path}.json"
    if not candidate.is_file():
        raise FileNotFoundError(
            f"no profile {name_or_path!r}; shipped profiles: {profile_names()}"
        )
    data = json.loads(candidate.read_text())
    return ProfileBundle.from_json_dict(str(name_or_path), data)
