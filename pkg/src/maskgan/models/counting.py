"""Parameter accounting straight from configuration, no tensors involved.

`parameter_shapes` enumerates every named parameter a config implies, with
names matching the torch modules exactly; `count_parameters` sums them.
"""

from __future__ import annotations

import math

from .config import DiscriminatorConfig, GeneratorConfig


def _generator_shapes(cfg: GeneratorConfig) -> dict[str, tuple[int, ...]]:
    base = cfg.base_resolution
    lat = cfg.latent_channels
    msk = cfg.mask_channels
    shapes: dict[str, tuple[int, ...]] = {}

    for r in cfg.resolutions():
        shapes[f"mask_entries.{r}.weight"] = (msk[r], 1, 1, 1)
        shapes[f"mask_entries.{r}.bias"] = (msk[r],)
    for r in cfg.resolutions():
        if r == base:
            continue
        shapes[f"mask_blocks.{r}.conv1.weight"] = (msk[r], msk[r], 3, 3)
        shapes[f"mask_blocks.{r}.conv1.bias"] = (msk[r],)
        shapes[f"mask_blocks.{r}.conv2.weight"] = (msk[r // 2], msk[r], 3, 3)
        shapes[f"mask_blocks.{r}.conv2.bias"] = (msk[r // 2],)

    if cfg.variant == "embedding":
        shapes["embed_head.weight"] = (cfg.embedding_dim, msk[base])
        shapes["embed_head.bias"] = (cfg.embedding_dim,)
    if cfg.variant == "pix2pix_baseline":
        shapes["from_base.weight"] = (lat[base], msk[base], 3, 3)
        shapes["from_base.bias"] = (lat[base],)
    else:
        width = base * base * lat[base]
        shapes["fc.weight"] = (width, cfg.latent_dim + cfg.embedding_dim)
        shapes["fc.bias"] = (width,)

    for r in cfg.resolutions():
        if r == base:
            continue
        in_ch = lat[r // 2] + cfg.decoder_skip_width(r)
        shapes[f"blocks.{r}.conv1.weight"] = (lat[r], in_ch, 3, 3)
        shapes[f"blocks.{r}.conv1.bias"] = (lat[r],)
        shapes[f"blocks.{r}.conv2.weight"] = (lat[r], lat[r], 3, 3)
        shapes[f"blocks.{r}.conv2.bias"] = (lat[r],)
    for r in cfg.resolutions():
        shapes[f"to_color.{r}.weight"] = (3, lat[r], 1, 1)
        shapes[f"to_color.{r}.bias"] = (3,)
    return shapes


def _discriminator_shapes(cfg: DiscriminatorConfig) -> dict[str, tuple[int, ...]]:
    base = cfg.base_resolution
    ch = cfg.channels
    shapes: dict[str, tuple[int, ...]] = {}

    for r in cfg.resolutions():
        shapes[f"from_color.{r}.weight"] = (ch[r], cfg.input_channels(), 1, 1)
        shapes[f"from_color.{r}.bias"] = (ch[r],)
    for r in cfg.resolutions():
        if r == base:
            continue
        shapes[f"blocks.{r}.conv1.weight"] = (ch[r], ch[r], 3, 3)
        shapes[f"blocks.{r}.conv1.bias"] = (ch[r],)
        shapes[f"blocks.{r}.conv2.weight"] = (ch[r // 2], ch[r], 3, 3)
        shapes[f"blocks.{r}.conv2.bias"] = (ch[r // 2],)

    head_in = ch[base] + (1 if cfg.minibatch_stddev else 0)
    shapes["base_conv.weight"] = (ch[base], head_in, 3, 3)
    shapes["base_conv.bias"] = (ch[base],)
    shapes["fc1.weight"] = (ch[base], ch[base] * base * base)
    shapes["fc1.bias"] = (ch[base],)
    shapes["fc2.weight"] = (1, ch[base])
    shapes["fc2.bias"] = (1,)
    return shapes


def parameter_shapes(
    config: GeneratorConfig | DiscriminatorConfig,
) -> dict[str, tuple[int, ...]]:
    if isinstance(config, GeneratorConfig):
        return _generator_shapes(config)
    if isinstance(config, DiscriminatorConfig):
        return _discriminator_shapes(config)
    raise TypeError(f"unsupported config type {type(config).__name__}")


def count_parameters(config: GeneratorConfig | DiscriminatorConfig) -> int:
    """Exact scalar parameter count implied by a config."""
    return sum(math.prod(shape) for shape in parameter_shapes(config).values())


def embedding_extra_parameters(config: GeneratorConfig) -> int:
    """Closed-form parameter surplus of an embedding generator over its
    no-embedding twin: the embedding head plus the widened projection."""
    if config.variant != "embedding":
        raise ValueError("needs an embedding-variant config")
    base = config.base_resolution
    head = config.embedding_dim * config.mask_channels[base] + config.embedding_dim
    widened_fc = config.embedding_dim * (base * base * config.latent_channels[base])
    return head + widened_fc
