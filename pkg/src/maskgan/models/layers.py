"""Building blocks: runtime-scaled (equalized) layers and batch statistics."""

from __future__ import annotations

import math

import torch
import torch.nn.functional as F
from torch import nn

LEAKY_SLOPE = 0.2


class EqualConv2d(nn.Module):
    """Convolution with He fan-in scaling applied at runtime.

    Weights are stored unit-normal and multiplied by gain/sqrt(fan_in) in
    the forward pass, so the optimizer sees identically scaled parameters
    across layers of very different widths.
    """

    def __init__(self, in_channels, out_channels, kernel_size, stride=1, padding=0, gain=math.sqrt(2.0)):
        super().__init__()
        self.weight = nn.Parameter(
            torch.randn(out_channels, in_channels, kernel_size, kernel_size)
        )
        self.bias = nn.Parameter(torch.zeros(out_channels))
        self.stride = stride
        self.padding = padding
        self.scale = gain / math.sqrt(in_channels * kernel_size * kernel_size)

    def forward(self, x):
        return F.conv2d(
            x, self.weight * self.scale, self.bias, stride=self.stride, padding=self.padding
        )


class EqualLinear(nn.Module):
    def __init__(self, in_features, out_features, gain=math.sqrt(2.0)):
        super().__init__()
        self.weight = nn.Parameter(torch.randn(out_features, in_features))
        self.bias = nn.Parameter(torch.zeros(out_features))
        self.scale = gain / math.sqrt(in_features)

    def forward(self, x):
        return F.linear(x, self.weight * self.scale, self.bias)


class MinibatchStdDev(nn.Module):
    """Appends one feature map holding the mean per-feature std over the
    batch. Permutation-invariant; zero for a batch of one."""

    def forward(self, x):
        n, _, h, w = x.shape
        std = torch.sqrt(x.var(dim=0, unbiased=False) + 1e-8)
        stat = std.mean().expand(n, 1, h, w)
        return torch.cat([x, stat], dim=1)


def leaky(x):
    return F.leaky_relu(x, LEAKY_SLOPE)


def upsample2x(x):
    return F.interpolate(x, scale_factor=2, mode="nearest")


def downsample2x(x):
    return F.avg_pool2d(x, kernel_size=2)


def init_weights(module: nn.Module, seed: int) -> nn.Module:
    """Deterministically re-initialize: weights unit-normal, biases zero.

    Parameters are visited in sorted name order so the result depends only
    on the seed and the architecture, not construction order.
    """
    generator = torch.Generator().manual_seed(seed)
    with torch.no_grad():
        for name, param in sorted(module.named_parameters()):
            if name.endswith("bias"):
                param.zero_()
            else:
                param.normal_(0.0, 1.0, generator=generator)
    return module
