"""Mask-guided image synthesis toolkit.

Provides the edge-mask dataset pipeline, the embedding-conditioned
progressive generator family with its WGAN-GP trainer, the sliced
Wasserstein evaluation protocol, and a small synthesis service.
"""

__version__ = "0.1.0"
