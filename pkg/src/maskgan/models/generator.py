"""Mask-conditioned progressive generator.

One module covers the three compared variants:

- ``embedding``: the mask projection path summarizes the mask into an
  embedding vector concatenated with the latent vector before the initial
  feature projection, and injects the first 8 mask features at every
  decoder level.
- ``no_embedding``: identical except the embedding head is absent and the
  initial projection consumes the latent vector alone.
- ``pix2pix_baseline``: encoder-decoder with full-width skip connections
  and no latent input; base features come straight from the deepest mask
  features.
"""

from __future__ import annotations

import torch
from torch import nn

from .config import GeneratorConfig
from .layers import EqualConv2d, EqualLinear, init_weights, leaky, upsample2x


class _MaskBlock(nn.Module):
    """Two 3x3 convolutions with strides 1 and 2: halves resolution while
    raising the channel count."""

    def __init__(self, in_channels, out_channels):
        super().__init__()
        self.conv1 = EqualConv2d(in_channels, in_channels, 3, padding=1)
        self.conv2 = EqualConv2d(in_channels, out_channels, 3, stride=2, padding=1)

    def forward(self, x):
        return leaky(self.conv2(leaky(self.conv1(x))))


class _DecoderBlock(nn.Module):
    """Nearest 2x upsample followed by two 3x3 convolutions."""

    def __init__(self, in_channels, out_channels):
        super().__init__()
        self.conv1 = EqualConv2d(in_channels, out_channels, 3, padding=1)
        self.conv2 = EqualConv2d(out_channels, out_channels, 3, padding=1)

    def forward(self, x):
        x = upsample2x(x)
        return leaky(self.conv2(leaky(self.conv1(x))))


class Generator(nn.Module):
    def __init__(self, config: GeneratorConfig):
        super().__init__()
        config.validate()
        self.config = config
        base = config.base_resolution
        lat = config.latent_channels
        msk = config.mask_channels

        self.mask_entries = nn.ModuleDict(
            {str(r): EqualConv2d(1, msk[r], 1) for r in config.resolutions()}
        )
        self.mask_blocks = nn.ModuleDict(
            {
                str(r): _MaskBlock(msk[r], msk[r // 2])
                for r in config.resolutions()
                if r > base
            }
        )
        if config.variant == "embedding":
            self.embed_head = EqualLinear(msk[base], config.embedding_dim)
        if config.variant == "pix2pix_baseline":
            self.from_base = EqualConv2d(msk[base], lat[base], 3, padding=1)
        else:
            self.fc = EqualLinear(
                config.latent_dim + config.embedding_dim, base * base * lat[base]
            )
        self.blocks = nn.ModuleDict(
            {
                str(r): _DecoderBlock(lat[r // 2] + config.decoder_skip_width(r), lat[r])
                for r in config.resolutions()
                if r > base
            }
        )
        self.to_color = nn.ModuleDict(
            {str(r): EqualConv2d(lat[r], 3, 1, gain=1.0) for r in config.resolutions()}
        )

    def _check_resolution(self, resolution: int) -> None:
        if resolution not in self.config.resolutions():
            raise ValueError(
                f"resolution {resolution} outside configured range "
                f"{self.config.base_resolution}..{self.config.max_resolution}"
            )

    def mask_features(
        self, mask: torch.Tensor, resolution: int
    ) -> tuple[dict[int, torch.Tensor], torch.Tensor | None]:
        """Run the mask projection path for a mask at the active resolution.

        Returns feature maps keyed by resolution (one per stride-2 block,
        spanning resolution/2 down to the base; just the entry features at
        the base itself) plus the mask embedding for the embedding variant.
        """
        self._check_resolution(resolution)
        if mask.ndim != 4 or mask.shape[1] != 1 or mask.shape[2] != resolution:
            raise ValueError(
                f"expected mask of shape (N, 1, {resolution}, {resolution}), got {tuple(mask.shape)}"
            )
        x = leaky(self.mask_entries[str(resolution)](mask))
        maps: dict[int, torch.Tensor] = {}
        if resolution == self.config.base_resolution:
            maps[resolution] = x
        else:
            r = resolution
            while r > self.config.base_resolution:
                x = self.mask_blocks[str(r)](x)
                r //= 2
                maps[r] = x
        embedding = None
        if self.config.variant == "embedding":
            pooled = maps[self.config.base_resolution].mean(dim=(2, 3))
            embedding = self.embed_head(pooled)
        return maps, embedding

    def base_projection(self, z: torch.Tensor | None, embedding: torch.Tensor | None, batch: int):
        """Initial feature projection onto the base-resolution grid."""
        base = self.config.base_resolution
        if self.config.variant == "embedding":
            x = self.fc(torch.cat([z, embedding], dim=1))
        else:
            x = self.fc(z)
        return leaky(x).view(batch, self.config.latent_channels[base], base, base)

    def color_outputs(
        self, z: torch.Tensor | None, mask: torch.Tensor, resolution: int
    ) -> dict[int, torch.Tensor]:
        """Tanh to-color output at every level of one tower pass; the fade
        formula blends the two topmost entries."""
        self._check_resolution(resolution)
        base = self.config.base_resolution
        if self.config.variant == "pix2pix_baseline":
            if z is not None:
                raise ValueError("pix2pix_baseline takes no latent input")
        else:
            if z is None or z.ndim != 2 or z.shape[1] != self.config.latent_dim:
                want = (mask.shape[0], self.config.latent_dim)
                got = None if z is None else tuple(z.shape)
                raise ValueError(f"expected latent batch of shape {want}, got {got}")

        maps, embedding = self.mask_features(mask, resolution)
        if self.config.variant == "pix2pix_baseline":
            x = leaky(self.from_base(maps[base]))
        else:
            x = self.base_projection(z, embedding, mask.shape[0])

        outputs = {base: torch.tanh(self.to_color[str(base)](x))}
        r = base
        while r < resolution:
            r *= 2
            skip = maps[r // 2]
            if self.config.variant != "pix2pix_baseline":
                skip = skip[:, : self.config.skip_width]
            x = self.blocks[str(r)](torch.cat([x, skip], dim=1))
            outputs[r] = torch.tanh(self.to_color[str(r)](x))
        return outputs

    def forward(
        self,
        z: torch.Tensor | None,
        mask: torch.Tensor,
        resolution: int | None = None,
        alpha: float = 1.0,
    ) -> torch.Tensor:
        """Generate images in [-1, 1] at the active resolution.

        During fade-in the output blends the top to-color head with the 2x
        nearest-upsampled previous head: alpha*new + (1-alpha)*up(prev).
        The endpoints are returned exactly; the mask path never fades.
        """
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {alpha}")
        resolution = self.config.max_resolution if resolution is None else resolution
        outputs = self.color_outputs(z, mask, resolution)
        new = outputs[resolution]
        if resolution == self.config.base_resolution or alpha >= 1.0:
            return new
        previous = upsample2x(outputs[resolution // 2])
        if alpha <= 0.0:
            return previous
        return alpha * new + (1.0 - alpha) * previous


def build_generator(config: GeneratorConfig, seed: int) -> Generator:
    """Construct a generator with deterministic seed-keyed initialization."""
    return init_weights(Generator(config), seed)
