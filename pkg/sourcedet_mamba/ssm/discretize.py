"""Zero-order-hold discretisation and the time-invariant convolution view of a diagonal SSM"""

from typing import Sequence, Tuple

import numpy as np
from scipy.special import exprel

from ..autodiff import Tensor
from ..autodiff import ops as F
from ..errors import ContractError, ShapeError
from ..types import FloatArray


def zoh_discretize(a: Tensor, b: Tensor, delta: Tensor) -> Tuple[Tensor, Tensor]:
    """Discretise diagonal ``A`` (d,) and input matrix ``B`` (n, d) with per-channel steps ``Δ`` (n, c).

    Returns ``Ā = exp(ΔA)`` and ``B̄ = (ΔA)⁻¹(exp(ΔA) − 1)·ΔB``, both (n, c, d). The removable
    singularity at ``ΔA = 0`` is filled by its limit, so ``B̄ = ΔB`` there.

    Raises:
        ContractError: some ``Δ`` is not strictly positive.
        ShapeError: the operands do not line up.
    """
    if a.ndim != 1 or b.ndim != 2 or delta.ndim != 2 or b.shape != (delta.shape[0], a.shape[0]):
        raise ShapeError("zoh_discretize", b.shape, delta.shape)
    if np.any(delta.data <= 0):
        raise ContractError(f"discretisation step must be positive, got min {float(delta.data.min())}")

    n, c = delta.shape
    d = a.shape[0]
    full = (n, c, d)
    delta3 = F.broadcast_to(F.reshape(delta, (n, c, 1)), full)
    da = delta3 * F.broadcast_to(F.reshape(a, (1, 1, d)), full)
    a_bar = F.exp(da)
    b_bar = F.exprel(da) * delta3 * F.broadcast_to(F.reshape(b, (n, 1, d)), full)
    return a_bar, b_bar


def convolution_kernel(a_bar: FloatArray, b_bar: FloatArray, c: FloatArray, length: int) -> FloatArray:
    """``K̄[j, ch] = Σ_d c[d] · a_bar[ch, d]^j · b_bar[ch, d]`` for ``j < length``"""
    powers = a_bar[None, :, :] ** np.arange(length)[:, None, None]
    return np.einsum("d,jcd,cd->jc", c, powers, b_bar)


def lti_parameters(a_log: FloatArray, b: FloatArray, c: FloatArray, dt: FloatArray) -> Tuple[FloatArray, FloatArray]:
    """Numpy ZOH for a time-invariant block; ``dt`` are the per-channel steps (already positive)"""
    if np.any(dt <= 0):
        raise ContractError("discretisation step must be positive")
    da = dt[:, None] * (-np.exp(a_log))[None, :]
    return np.exp(da), exprel(da) * dt[:, None] * b[None, :]


def causal_convolve(kernel: FloatArray, xs: Sequence[FloatArray], d_skip: FloatArray) -> list:
    """``y_t = Σ_{j≤t} K̄_j ∘ x_{t−j} + D ∘ x_t`` with ``x_t`` (n, c) and ``K̄`` (L, c)"""
    if kernel.shape[0] < len(xs):
        raise ShapeError("causal_convolve", kernel.shape, (len(xs),))
    ys = []
    for t, x in enumerate(xs):
        y = d_skip[None, :] * x
        for j in range(t + 1):
            y = y + kernel[j][None, :] * xs[t - j]
        ys.append(y)
    return ys


__all__ = ["causal_convolve", "convolution_kernel", "lti_parameters", "zoh_discretize"]
