from .config import (
    DiscriminatorConfig,
    GeneratorConfig,
    config_hash,
    load_profile,
    profile_names,
)
from .counting import count_parameters, embedding_extra_parameters, parameter_shapes
from .discriminator import Discriminator, build_discriminator
from .generator import Generator, build_generator
from .layers import init_weights

__all__ = [
    "DiscriminatorConfig",
    "GeneratorConfig",
    "config_hash",
    "load_profile",
    "profile_names",
    "count_parameters",
    "embedding_extra_parameters",
    "parameter_shapes",
    "Discriminator",
    "build_discriminator",
    "Generator",
    "build_generator",
    "init_weights",
]
