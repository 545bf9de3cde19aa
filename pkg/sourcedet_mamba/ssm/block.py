import logging
from typing import Optional, Tuple

import numpy as np

from ..autodiff import Parameter, Tensor
from ..autodiff import ops as F
from ..errors import ContractError, ShapeError
from ..hypergraph import GraphOperators
from ..models import Activation, Selection
from ..nn import Linear, MLPHead, Module

logger = logging.getLogger(__name__)

# Initial discretisation steps are drawn log-uniformly from this range
DT_MIN = 1e-3
DT_MAX = 1e-1


def inverse_softplus(values: np.ndarray) -> np.ndarray:
    return values + np.log(-np.expm1(-values))


def _initial_steps(rng: np.random.Generator, size: int) -> np.ndarray:
    return np.exp(rng.uniform(np.log(DT_MIN), np.log(DT_MAX), size=size))


class SSMBlock(Module):
    """Parameters of one graph-aware state space block.

    Attributes:
        a_log: ``A = −exp(a_log)``, shared by all channels; initialised to ``log(1..d_state)``.
        d_skip: per-channel skip coefficient.
        w_b, w_c, w_delta: input projections producing ``B_t``, ``C_t`` and the pre-softplus ``Δ_t``
            (selective blocks only).
        b, c, dt: fixed ``B``, ``C`` and pre-softplus ``Δ`` (time-invariant blocks only).
        edge_head: hyperedge weight head; ``None`` when coupling is off or Ω is fixed to the identity.
    """

    def __init__(
        self,
        channels: int,
        d_state: int,
        edge_hidden: int,
        activation: Activation,
        rng: np.random.Generator,
        selective: bool = True,
        selection: Selection = Selection.NODE,
        graph_coupling: bool = True,
        edge_weights: bool = True,
    ):
        self.channels = channels
        self.d_state = d_state
        self.selective = selective
        self.selection = Selection(selection)
        self.graph_coupling = graph_coupling

        self.a_log = Parameter(np.log(np.arange(1, d_state + 1, dtype=np.float64)), "a_log")
        self.d_skip = Parameter(np.ones(channels), "d_skip")
        if selective:
            self.w_b = Linear(channels, d_state, rng, bias=False)
            self.w_c = Linear(channels, d_state, rng, bias=False)
            self.w_delta = Linear(channels, channels, rng)
            self.w_delta.bias.data = inverse_softplus(_initial_steps(rng, channels))
        else:
            self.b = Parameter(np.ones(d_state), "b")
            self.c = Parameter(rng.normal(0.0, 1.0 / np.sqrt(d_state), size=d_state), "c")
            self.dt = Parameter(inverse_softplus(_initial_steps(rng, channels)), "dt")
        self.edge_head: Optional[MLPHead] = (
            MLPHead(channels * d_state, edge_hidden, activation, rng) if graph_coupling and edge_weights else None
        )

    def a(self) -> Tensor:
        return -F.exp(self.a_log)


def selective_params(
    block: SSMBlock, x: Tensor, operators: Optional[GraphOperators] = None
) -> Tuple[Tensor, Tensor, Tensor]:
    """``(B_t, C_t, Δ_t)`` with shapes (n, d_state), (n, d_state), (n, channels).

    Graph-level selection feeds each tiled copy's mean feature row to the projections and
    broadcasts the result back to that copy's nodes.
    """
    if x.ndim != 2 or x.shape[1] != block.channels:
        raise ShapeError("selective_params", x.shape, (x.shape[0] if x.ndim else 0, block.channels))
    n = x.shape[0]
    d, c = block.d_state, block.channels

    if not block.selective:
        b = F.broadcast_to(F.reshape(block.b, (1, d)), (n, d))
        cc = F.broadcast_to(F.reshape(block.c, (1, d)), (n, d))
        delta = F.broadcast_to(F.reshape(F.softplus(block.dt), (1, c)), (n, c))
        return b, cc, delta

    source = x
    if block.selection is Selection.GRAPH:
        if operators is None:
            raise ContractError("graph-level selection needs graph operators")
        source = F.spmm(operators.graph_expand, F.spmm(operators.graph_pool, x))
    return block.w_b(source), block.w_c(source), F.softplus(block.w_delta(source))


__all__ = ["DT_MAX", "DT_MIN", "SSMBlock", "inverse_softplus", "selective_params"]
