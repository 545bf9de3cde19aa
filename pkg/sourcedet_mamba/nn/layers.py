"""Dense, hypergraph-convolution and hyperedge-weight layers"""

from typing import Callable, Dict

import numpy as np
import scipy.sparse as sp

from ..autodiff import Parameter, Tensor
from ..autodiff import ops as F
from ..errors import ShapeError
from ..models import Activation
from .module import Module

ActivationFn = Callable[[Tensor], Tensor]

_ACTIVATIONS: Dict[Activation, ActivationFn] = {
    Activation.RELU: F.relu,
    Activation.SOFTPLUS: F.softplus,
    Activation.TANH: F.tanh,
    Activation.IDENTITY: lambda x: x,
}


def activation_fn(activation: Activation) -> ActivationFn:
    return _ACTIVATIONS[Activation(activation)]


def glorot(rng: np.random.Generator, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


class Linear(Module):
    def __init__(self, in_features: int, out_features: int, rng: np.random.Generator, bias: bool = True):
        self.in_features = in_features
        self.out_features = out_features
        self.weight = Parameter(glorot(rng, in_features, out_features), "weight")
        if bias:
            self.bias = Parameter(np.zeros(out_features), "bias")

    def forward(self, x: Tensor) -> Tensor:
        if x.ndim != 2 or x.shape[1] != self.in_features:
            raise ShapeError("linear", x.shape, self.weight.shape)
        out = x @ self.weight
        bias = getattr(self, "bias", None)
        return out + bias if bias is not None else out


class HGNNLayer(Module):
    """One hypergraph convolution ``σ(P X W)`` with a precomputed propagation operator ``P``"""

    def __init__(self, in_features: int, out_features: int, activation: Activation, rng: np.random.Generator):
        self.in_features = in_features
        self.out_features = out_features
        self.activation = Activation(activation)
        self.weight = Parameter(glorot(rng, in_features, out_features), "weight")

    def forward(self, x: Tensor, propagation: sp.spmatrix) -> Tensor:
        return hgnn_forward(self, x, propagation)


def hgnn_forward(layer: HGNNLayer, x: Tensor, propagation: sp.spmatrix) -> Tensor:
    if x.ndim != 2 or x.shape[1] != layer.in_features:
        raise ShapeError("hgnn", x.shape, layer.weight.shape)
    return activation_fn(layer.activation)(F.spmm(propagation, x @ layer.weight))


class MLPHead(Module):
    """Two activated linear layers and a sigmoid, mapping each row to one value in (0, 1)"""

    def __init__(self, in_features: int, hidden: int, activation: Activation, rng: np.random.Generator):
        self.in_features = in_features
        self.activation = Activation(activation)
        self.hidden = Linear(in_features, hidden, rng)
        self.output = Linear(hidden, 1, rng)

    def forward(self, x: Tensor) -> Tensor:
        act = activation_fn(self.activation)
        return F.sigmoid(act(self.output(act(self.hidden(x)))))


def edge_weight_head(head: MLPHead, h_edge: Tensor) -> Tensor:
    """Per-hyperedge weights Ω (m×1) from per-edge state summaries (m×d)"""
    if h_edge.ndim != 2 or h_edge.shape[1] != head.in_features:
        raise ShapeError("edge_weight_head", h_edge.shape, (h_edge.shape[0] if h_edge.ndim else 0, head.in_features))
    return head(h_edge)


__all__ = ["HGNNLayer", "Linear", "MLPHead", "activation_fn", "edge_weight_head", "glorot", "hgnn_forward"]
