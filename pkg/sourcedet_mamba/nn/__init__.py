"""Differentiable layers built on the autodiff engine"""

from .layers import HGNNLayer, Linear, MLPHead, activation_fn, edge_weight_head, glorot, hgnn_forward
from .module import Module
from .sequence import LSTMBlock, TemporalAttention

__all__ = (
    "HGNNLayer",
    "LSTMBlock",
    "Linear",
    "MLPHead",
    "Module",
    "TemporalAttention",
    "activation_fn",
    "edge_weight_head",
    "glorot",
    "hgnn_forward",
)
