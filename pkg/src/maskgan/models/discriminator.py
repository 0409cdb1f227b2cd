"""Convolutional Wasserstein critic, mask-conditioned via a fourth input
channel, with the same progressive fade-in scheme as the generator."""

from __future__ import annotations

import torch
from torch import nn

from .config import DiscriminatorConfig
from .layers import (
    EqualConv2d,
    EqualLinear,
    MinibatchStdDev,
    downsample2x,
    init_weights,
    leaky,
)


class _CriticBlock(nn.Module):
    """Two 3x3 convolutions followed by 2x average pooling."""

    def __init__(self, in_channels, out_channels):
        super().__init__()
        self.conv1 = EqualConv2d(in_channels, in_channels, 3, padding=1)
        self.conv2 = EqualConv2d(in_channels, out_channels, 3, padding=1)

    def forward(self, x):
        return downsample2x(leaky(self.conv2(leaky(self.conv1(x)))))


class Discriminator(nn.Module):
    def __init__(self, config: DiscriminatorConfig):
        super().__init__()
        config.validate()
        self.config = config
        base = config.base_resolution
        ch = config.channels

        self.from_color = nn.ModuleDict(
            {
                str(r): EqualConv2d(config.input_channels(), ch[r], 1)
                for r in config.resolutions()
            }
        )
        self.blocks = nn.ModuleDict(
            {
                str(r): _CriticBlock(ch[r], ch[r // 2])
                for r in config.resolutions()
                if r > base
            }
        )
        if config.minibatch_stddev:
            self.stddev = MinibatchStdDev()
        head_in = ch[base] + (1 if config.minibatch_stddev else 0)
        self.base_conv = EqualConv2d(head_in, ch[base], 3, padding=1)
        self.fc1 = EqualLinear(ch[base] * base * base, ch[base])
        self.fc2 = EqualLinear(ch[base], 1, gain=1.0)

    def forward(
        self,
        image: torch.Tensor,
        mask: torch.Tensor | None,
        resolution: int | None = None,
        alpha: float = 1.0,
    ) -> torch.Tensor:
        """Unbounded critic scores, shape (N,)."""
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {alpha}")
        resolution = self.config.max_resolution if resolution is None else resolution
        if resolution not in self.config.resolutions():
            raise ValueError(
                f"resolution {resolution} outside configured range "
                f"{self.config.base_resolution}..{self.config.max_resolution}"
            )
        if image.shape[2] != resolution or image.shape[3] != resolution:
            raise ValueError(
                f"expected image at {resolution}x{resolution}, got {tuple(image.shape)}"
            )
        if self.config.conditional_input:
            if mask is None or mask.shape[2:] != image.shape[2:]:
                raise ValueError("conditional critic needs a mask matching the image")
            x_in = torch.cat([image, mask], dim=1)
        else:
            x_in = image

        base = self.config.base_resolution
        x = leaky(self.from_color[str(resolution)](x_in))
        r = resolution
        if r > base:
            x = self.blocks[str(r)](x)
            r //= 2
            if alpha < 1.0:
                skip = leaky(self.from_color[str(r)](downsample2x(x_in)))
                x = alpha * x + (1.0 - alpha) * skip
            while r > base:
                x = self.blocks[str(r)](x)
                r //= 2

        if self.config.minibatch_stddev:
            x = self.stddev(x)
        x = leaky(self.base_conv(x))
        x = leaky(self.fc1(x.flatten(1)))
        return self.fc2(x).squeeze(1)


def build_discriminator(config: DiscriminatorConfig, seed: int) -> Discriminator:
    """Construct a critic with deterministic seed-keyed initialization."""
    return init_weights(Discriminator(config), seed)
