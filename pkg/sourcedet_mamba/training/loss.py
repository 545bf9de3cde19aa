"""Class-balanced cross-entropy with an L2 penalty"""

from typing import Optional, Sequence

import numpy as np

from ..autodiff import Parameter, Tensor
from ..autodiff import ops as F
from ..errors import ContractError, ShapeError
from ..types import FloatArray

# Scores are clamped to [EPS, 1 - EPS] inside the logarithms
EPS = 1e-7


def balance_coefficient(n: int, n_sources: int) -> float:
    """``ξ = |s| / (n − |s|)``"""
    if not 0 < n_sources < n:
        raise ContractError(f"balance coefficient needs 0 < |s| < n, got |s|={n_sources}, n={n}")
    return n_sources / (n - n_sources)


def node_weights(labels: FloatArray) -> FloatArray:
    """1 for sources and ξ for every other node of one cascade"""
    labels = np.asarray(labels, dtype=np.float64)
    n_sources = int(labels.sum())
    xi = balance_coefficient(labels.shape[0], n_sources)
    return np.where(labels > 0.5, 1.0, xi)


def l2_penalty(parameters: Sequence[Parameter]) -> Tensor:
    total: Tensor = Tensor(0.0)
    for p in parameters:
        total = total + F.tensor_sum(p * p)
    return total


def balanced_loss(
    scores: Tensor,
    labels: FloatArray,
    parameters: Sequence[Parameter],
    weight_decay: float,
    weights: Optional[FloatArray] = None,
) -> Tensor:
    """``Σ_{v∈s} CE(v) + ξ·Σ_{v∉s} CE(v) + λ‖w‖₂²``.

    ``weights`` overrides the per-node factors, which is how batches of several cascades carry
    their own ξ.
    """
    labels = np.asarray(labels, dtype=np.float64)
    if scores.shape != labels.shape:
        raise ShapeError("balanced_loss", scores.shape, labels.shape)
    if weights is None:
        weights = node_weights(labels)

    p = F.clamp(scores, EPS, 1.0 - EPS)
    y = Tensor(labels)
    ce = -(y * F.log(p) + (1.0 - y) * F.log(1.0 - p))
    loss = F.tensor_sum(ce * Tensor(weights))
    if weight_decay > 0:
        loss = loss + F.scale(l2_penalty(parameters), weight_decay)
    return loss


__all__ = ["EPS", "balance_coefficient", "balanced_loss", "l2_penalty", "node_weights"]
