"""WGAN-GP objective pieces.

`critic` arguments are callables (images, masks) -> per-sample scores;
`generator` arguments are callables (z, masks) -> images. The training
loop binds resolution and fade alpha before passing the models in.
"""

from __future__ import annotations

import torch


class NonFiniteLossError(RuntimeError):
    """A loss or gradient left the finite range; training must abort."""


def _require_finite(value: torch.Tensor, what: str) -> torch.Tensor:
    if not torch.isfinite(value).all():
        raise NonFiniteLossError(f"non-finite {what}")
    return value


def gradient_penalty(
    critic,
    real_batch: torch.Tensor,
    fake_batch: torch.Tensor,
    mask_batch: torch.Tensor | None,
    gp_lambda: float,
    *,
    eps: torch.Tensor | None = None,
    rng: torch.Generator | None = None,
) -> torch.Tensor:
    """lambda * E[(||grad_x critic(x_hat, mask)||_2 - 1)^2] on per-sample
    interpolates x_hat = eps*real + (1-eps)*fake.

    The gradient is taken with respect to the image inputs only; the mask
    is held fixed. Differentiable with respect to critic parameters.
    """
    if real_batch.shape != fake_batch.shape:
        raise ValueError(
            f"real/fake batch shapes differ: {tuple(real_batch.shape)} vs {tuple(fake_batch.shape)}"
        )
    n = real_batch.shape[0]
    if eps is None:
        eps_shape = (n,) + (1,) * (real_batch.ndim - 1)
        eps = torch.rand(eps_shape, generator=rng, dtype=real_batch.dtype)
    x_hat = (eps * real_batch.detach() + (1.0 - eps) * fake_batch.detach()).requires_grad_(True)
    scores = critic(x_hat, mask_batch)
    (grads,) = torch.autograd.grad(
        scores.sum(), x_hat, create_graph=True, allow_unused=True
    )
    if grads is None:  # critic ignores its input: gradient is identically zero
        grads = torch.zeros_like(x_hat)
    _require_finite(grads, "interpolate gradients")
    norms = grads.flatten(1).norm(2, dim=1)
    return gp_lambda * ((norms - 1.0) ** 2).mean()


def critic_loss(
    critic,
    generator,
    real: torch.Tensor,
    masks: torch.Tensor | None,
    z_batch: torch.Tensor | None,
    *,
    gp_lambda: float,
    drift_epsilon: float = 0.0,
    eps: torch.Tensor | None = None,
    rng: torch.Generator | None = None,
    return_parts: bool = False,
):
    """Scalar objective minimized by the critic:
    E[critic(fake)] - E[critic(real)] + gradient penalty (+ drift term).

    Fake images are produced with gradients detached from the generator.
    """
    with torch.no_grad():
        fake = generator(z_batch, masks)
    score_fake = critic(fake, masks)
    score_real = critic(real, masks)
    penalty = gradient_penalty(
        critic, real, fake, masks, gp_lambda, eps=eps, rng=rng
    )
    loss = score_fake.mean() - score_real.mean() + penalty
    if drift_epsilon:
        loss = loss + drift_epsilon * (score_real**2).mean()
    _require_finite(loss, "critic loss")
    if return_parts:
        return loss, {"gradient_penalty": float(penalty.detach())}
    return loss


def generator_loss(
    critic,
    generator,
    masks: torch.Tensor | None,
    z_batch: torch.Tensor | None,
) -> torch.Tensor:
    """Negative mean critic score on generated images; gradients flow to
    the generator only insofar as the caller steps its optimizer."""
    fake = generator(z_batch, masks)
    loss = -critic(fake, masks).mean()
    return _require_finite(loss, "generator loss")
