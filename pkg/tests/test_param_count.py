import pytest
import torch

from maskgan.models import (
    build_discriminator,
    build_generator,
    count_parameters,
    embedding_extra_parameters,
    load_profile,
    parameter_shapes,
)
from maskgan.models.config import GeneratorConfig

PAPER_TARGETS = {
    "embedding": 23.79e6,
    "no_embedding": 23.07e6,
    "pix2pix_baseline": 23.23e6,
}


def test_single_conv_closed_form():
    cfg = GeneratorConfig(
        variant="no_embedding",
        base_resolution=8,
        max_resolution=8,
        latent_dim=4,
        embedding_dim=0,
        latent_channels={8: 8},
        mask_channels={8: 8},
    )
    shapes = parameter_shapes(cfg)
    # a 3x3 convolution, 1->8 channels with bias, would be 3*3*1*8 + 8 = 80;
    # the entry convolution here is 1x1: 1*1*1*8 + 8 = 16
    assert (
        sum(
            torch.Size(shapes[k]).numel()
            for k in ("mask_entries.8.weight", "mask_entries.8.bias")
        )
        == 16
    )
    # fully-connected D -> N with bias: D*N + N
    n = 8 * 8 * 8
    assert (
        sum(torch.Size(shapes[k]).numel() for k in ("fc.weight", "fc.bias"))
        == 4 * n + n
    )


def test_conv3x3_closed_form_in_block():
    cfg = GeneratorConfig(
        variant="no_embedding",
        base_resolution=8,
        max_resolution=16,
        latent_dim=4,
        embedding_dim=0,
        latent_channels={8: 8, 16: 8},
        mask_channels={8: 8, 16: 8},
    )
    shapes = parameter_shapes(cfg)
    # mask block conv1: 3*3*8*8 + 8
    assert torch.Size(shapes["mask_blocks.16.conv1.weight"]).numel() == 576
    assert torch.Size(shapes["mask_blocks.16.conv1.bias"]).numel() == 8


@pytest.mark.parametrize("variant", ["embedding", "no_embedding", "pix2pix_baseline"])
def test_count_matches_instantiated_model_exactly(desk_bundle, variant):
    cfg = desk_bundle.generators[variant]
    model = build_generator(cfg, seed=0)
    actual = {name: tuple(p.shape) for name, p in model.named_parameters()}
    assert actual == parameter_shapes(cfg)
    assert sum(p.numel() for p in model.parameters()) == count_parameters(cfg)


def test_discriminator_count_matches_model(desk_bundle):
    cfg = desk_bundle.discriminator
    model = build_discriminator(cfg, seed=0)
    actual = {name: tuple(p.shape) for name, p in model.named_parameters()}
    assert actual == parameter_shapes(cfg)
    assert sum(p.numel() for p in model.parameters()) == count_parameters(cfg)


@pytest.mark.parametrize("profile", ["desk", "paper"])
def test_embedding_exceeds_plain_by_closed_form(profile):
    bundle = load_profile(profile)
    emb = bundle.generators["embedding"]
    plain = bundle.generators["no_embedding"]
    surplus = count_parameters(emb) - count_parameters(plain)
    assert surplus > 0
    assert surplus == embedding_extra_parameters(emb)


def test_paper_profile_budgets_within_15_percent():
    bundle = load_profile("paper")
    for variant, target in PAPER_TARGETS.items():
        count = count_parameters(bundle.generators[variant])
        assert abs(count - target) / target <= 0.15, (
            f"{variant}: {count / 1e6:.2f}M vs target {target / 1e6:.2f}M"
        )
