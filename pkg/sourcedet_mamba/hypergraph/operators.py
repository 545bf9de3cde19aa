"""Sparse propagation operators derived from an incidence system"""

from typing import Optional

import numpy as np
import scipy.sparse as sp
from attrs import define

from ..types import FloatArray
from .core import IncidenceSystem


def pseudo_inverse(values: FloatArray, power: float = 1.0) -> FloatArray:
    """Elementwise ``values ** -power`` with zero entries mapped to zero"""
    values = np.asarray(values, dtype=np.float64)
    out = np.zeros_like(values)
    nonzero = values != 0
    out[nonzero] = values[nonzero] ** (-power)
    return out


@define(frozen=True, eq=False)
class GraphOperators:
    """Operators shared by the HGNN layer and the graph-aware scan.

    Attributes:
        incidence: the (possibly tiled) incidence system.
        hgnn_propagation: ``D_V^{-1/2} H Ω D_E^{-1} Hᵀ D_V^{-1/2}`` with static Ω.
        node_to_edge: ``Hᵀ D_V^{-1}`` (m×n), node states averaged onto hyperedges.
        edge_to_node: ``H D_E^{-1}`` (n×m), hyperedge states aggregated back to nodes.
        graph_pool: k×N mean over the nodes of each tiled copy.
        graph_expand: N×k broadcast of per-copy rows back to nodes.
    """

    incidence: IncidenceSystem
    hgnn_propagation: sp.csr_matrix
    node_to_edge: sp.csr_matrix
    edge_to_node: sp.csr_matrix
    graph_pool: sp.csr_matrix
    graph_expand: sp.csr_matrix

    @property
    def n(self) -> int:
        return self.incidence.n

    @property
    def m(self) -> int:
        return self.incidence.m

    @property
    def copies(self) -> int:
        return int(self.graph_pool.shape[0])


def build_operators(
    incidence: IncidenceSystem, edge_weights: Optional[FloatArray] = None, copies: int = 1
) -> GraphOperators:
    """Build operators for ``copies`` disjoint copies of ``incidence``.

    ``edge_weights`` are the weights of one copy and are repeated per copy.
    """
    tiled = incidence.tile(copies)
    if edge_weights is None:
        omega = np.ones(tiled.m)
    else:
        omega = np.tile(np.asarray(edge_weights, dtype=np.float64), copies)

    dv_inv_sqrt = sp.diags(pseudo_inverse(tiled.node_degrees, 0.5))
    dv_inv = sp.diags(pseudo_inverse(tiled.node_degrees))
    de_inv = sp.diags(pseudo_inverse(tiled.edge_degrees))
    h = tiled.node_major
    ht = tiled.edge_major

    propagation = (dv_inv_sqrt @ h @ sp.diags(omega) @ de_inv @ ht @ dv_inv_sqrt).tocsr()

    per_copy = incidence.n
    owner = np.repeat(np.arange(copies), per_copy)
    pool = sp.csr_matrix(
        (np.full(owner.shape[0], 1.0 / max(per_copy, 1)), (owner, np.arange(owner.shape[0]))),
        shape=(copies, owner.shape[0]),
    )
    expand = sp.csr_matrix(
        (np.ones(owner.shape[0]), (np.arange(owner.shape[0]), owner)), shape=(owner.shape[0], copies)
    )

    return GraphOperators(
        incidence=tiled,
        hgnn_propagation=propagation,
        node_to_edge=(ht @ dv_inv).tocsr(),
        edge_to_node=(h @ de_inv).tocsr(),
        graph_pool=pool,
        graph_expand=expand,
    )


__all__ = ["GraphOperators", "build_operators", "pseudo_inverse"]
