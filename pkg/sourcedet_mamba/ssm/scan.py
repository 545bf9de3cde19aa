"""Reverse-order scan with hyperedge-mediated state mixing"""

from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..autodiff import Tensor
from ..autodiff import ops as F
from ..errors import ContractError, ShapeError
from ..hypergraph import GraphOperators
from ..nn import MLPHead, edge_weight_head
from ..types import FloatArray
from .block import SSMBlock, selective_params
from .discretize import causal_convolve, convolution_kernel, lti_parameters, zoh_discretize


def neighbor_aggregate(h: Tensor, operators: GraphOperators, head: Optional[MLPHead] = None) -> Tensor:
    """``h_N = H D_E⁻¹ Ω Hᵀ D_V⁻¹ h`` for node states ``h`` (n, c, d).

    Node states are averaged onto hyperedges, weighted per edge by ``head`` (Ω = I when ``head`` is
    None) and aggregated back to their member nodes.
    """
    if h.ndim != 3 or h.shape[0] != operators.n:
        raise ShapeError("neighbor_aggregate", h.shape, (operators.n,))
    n, c, d = h.shape
    h_edge = F.spmm(operators.node_to_edge, F.reshape(h, (n, c * d)))
    if head is not None:
        omega = edge_weight_head(head, h_edge)
        h_edge = h_edge * F.broadcast_to(omega, h_edge.shape)
    return F.reshape(F.spmm(operators.edge_to_node, h_edge), (n, c, d))


def scan_step(
    block: SSMBlock, h_prev: Optional[Tensor], x: Tensor, operators: Optional[GraphOperators]
) -> Tuple[Tensor, Tensor]:
    """One update ``h_t = Ā∘h_{t−1} + B̄∘x_t + h_N(h_{t−1})``, ``y_t = Σ_d C_t∘h_t + D∘x_t``.

    ``h_prev=None`` stands for the zero initial state.
    """
    n, c = x.shape
    d = block.d_state
    b, cc, delta = selective_params(block, x, operators)
    a_bar, b_bar = zoh_discretize(block.a(), b, delta)

    h = b_bar * F.broadcast_to(F.reshape(x, (n, c, 1)), (n, c, d))
    if h_prev is not None:
        h = h + a_bar * h_prev
        if block.graph_coupling:
            if operators is None:
                raise ContractError("graph coupling needs graph operators")
            h = h + neighbor_aggregate(h_prev, operators, block.edge_head)

    readout = F.tensor_sum(h * F.broadcast_to(F.reshape(cc, (n, 1, d)), (n, c, d)), axis=2)
    y = readout + x * F.broadcast_to(F.reshape(block.d_skip, (1, c)), (n, c))
    return h, y


def graph_scan(block: SSMBlock, xs: Sequence[Tensor], operators: Optional[GraphOperators] = None) -> List[Tensor]:
    """Run ``block`` over ``xs`` (already in scan order) from a zero state; returns every ``y_t``"""
    if not xs:
        raise ContractError("graph_scan needs a non-empty sequence")
    h: Optional[Tensor] = None
    ys: List[Tensor] = []
    for x in xs:
        h, y = scan_step(block, h, x, operators)
        ys.append(y)
    return ys


def lti_kernel_apply(block: SSMBlock, xs: Sequence[FloatArray]) -> List[FloatArray]:
    """Evaluate a time-invariant, uncoupled block as a causal convolution with ``K̄_j = C Ā^j B̄``.

    Raises:
        ContractError: ``block`` is selective or couples nodes through the hypergraph.
    """
    if block.selective:
        raise ContractError("convolution form requires a time-invariant (non-selective) block")
    if block.graph_coupling:
        raise ContractError("convolution form requires graph coupling to be disabled")
    dt = np.logaddexp(0.0, block.dt.data)
    a_bar, b_bar = lti_parameters(block.a_log.data, block.b.data, block.c.data, dt)
    kernel = convolution_kernel(a_bar, b_bar, block.c.data, len(xs))
    return causal_convolve(kernel, [np.asarray(x, dtype=np.float64) for x in xs], block.d_skip.data)


__all__ = ["graph_scan", "lti_kernel_apply", "neighbor_aggregate", "scan_step"]
