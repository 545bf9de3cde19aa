"""Hypergraph, incidence algebra and clique expansion"""

import math
from typing import Iterable, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import scipy.sparse as sp
from attrs import define, field

from ..errors import ValidationError
from ..types import FloatArray, IntArray


def _freeze_edges(edges: Iterable[Iterable[int]]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(sorted(int(v) for v in edge)) for edge in edges)


def _freeze_weights(weights: Optional[Iterable[float]]) -> Optional[Tuple[float, ...]]:
    if weights is None:
        return None
    return tuple(float(w) for w in weights)


@define(frozen=True)
class Hypergraph:
    """Static topology ``G = (V, E, Ω)`` with dense node ids ``[0, n)``.

    Attributes:
        n (int): node count.
        edges (Tuple[Tuple[int, ...], ...]): hyperedges, each stored with ascending node ids.
        edge_weights (Tuple[float, ...]): diagonal of Ω, all 1.0 unless given.
    """

    n: int = field(converter=int)
    edges: Tuple[Tuple[int, ...], ...] = field(converter=_freeze_edges)
    edge_weights: Tuple[float, ...] = field(default=None, converter=_freeze_weights)

    def __attrs_post_init__(self) -> None:
        if self.n < 0:
            raise ValidationError(f"node count must be non-negative, got {self.n}")
        for index, edge in enumerate(self.edges):
            if not edge:
                raise ValidationError(f"hyperedge {index} is empty")
            if len(set(edge)) != len(edge):
                raise ValidationError(f"hyperedge {index} repeats a node: {list(edge)}")
            if edge[0] < 0 or edge[-1] >= self.n:
                raise ValidationError(f"hyperedge {index} references a node outside [0, {self.n})")
        if self.edge_weights is None:
            object.__setattr__(self, "edge_weights", (1.0,) * len(self.edges))
        if len(self.edge_weights) != len(self.edges):
            raise ValidationError(f"expected {len(self.edges)} edge weights, got {len(self.edge_weights)}")
        for index, weight in enumerate(self.edge_weights):
            if not (math.isfinite(weight) and weight > 0):
                raise ValidationError(f"edge weight {index} must be positive and finite, got {weight}")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weights(self) -> FloatArray:
        return np.asarray(self.edge_weights, dtype=np.float64)

    def relabel(self, permutation: Sequence[int]) -> "Hypergraph":
        """Return the hypergraph with node ``v`` renamed to ``permutation[v]``"""
        perm = [int(p) for p in permutation]
        return Hypergraph(n=self.n, edges=[[perm[v] for v in e] for e in self.edges], edge_weights=self.edge_weights)


@define(frozen=True, eq=False)
class IncidenceSystem:
    """Sparse incidence ``H`` in both orientations, plus node and hyperedge degrees.

    Attributes:
        node_major (sp.csr_matrix): n×m, ``H[v, e] = 1`` iff ``v ∈ e``.
        edge_major (sp.csr_matrix): m×n, the transpose stored row-compressed.
        node_degrees (IntArray): ``D_V`` diagonal.
        edge_degrees (IntArray): ``D_E`` diagonal.
    """

    node_major: sp.csr_matrix
    edge_major: sp.csr_matrix
    node_degrees: IntArray
    edge_degrees: IntArray

    @property
    def n(self) -> int:
        return int(self.node_major.shape[0])

    @property
    def m(self) -> int:
        return int(self.node_major.shape[1])

    def edge_members(self, e: int) -> IntArray:
        start, stop = self.edge_major.indptr[e], self.edge_major.indptr[e + 1]
        return self.edge_major.indices[start:stop]

    def node_edges(self, v: int) -> IntArray:
        start, stop = self.node_major.indptr[v], self.node_major.indptr[v + 1]
        return self.node_major.indices[start:stop]

    def edges(self) -> Tuple[Tuple[int, ...], ...]:
        """Reconstruct the edge list from the nonzero pattern"""
        return tuple(tuple(int(v) for v in sorted(self.edge_members(e))) for e in range(self.m))

    def tile(self, copies: int) -> "IncidenceSystem":
        """Disjoint union of ``copies`` copies (block-diagonal incidence)"""
        if copies == 1:
            return self
        return _from_csr(sp.block_diag([self.node_major] * copies, format="csr"))


@define(frozen=True, eq=False)
class PairwiseGraph:
    """Simple undirected graph produced by clique expansion"""

    n: int
    adjacency: sp.csr_matrix

    def neighbors(self, v: int) -> IntArray:
        start, stop = self.adjacency.indptr[v], self.adjacency.indptr[v + 1]
        return self.adjacency.indices[start:stop]

    def to_networkx(self) -> nx.Graph:
        graph = nx.from_scipy_sparse_array(self.adjacency)
        graph.add_nodes_from(range(self.n))
        return graph


def _from_csr(node_major: sp.csr_matrix) -> IncidenceSystem:
    node_major = node_major.tocsr()
    node_major.sort_indices()
    edge_major = node_major.T.tocsr()
    edge_major.sort_indices()
    return IncidenceSystem(
        node_major=node_major,
        edge_major=edge_major,
        node_degrees=np.asarray(node_major.sum(axis=1)).ravel().astype(np.int64),
        edge_degrees=np.asarray(node_major.sum(axis=0)).ravel().astype(np.int64),
    )


def build_incidence(hg: Hypergraph) -> IncidenceSystem:
    rows = np.fromiter((v for edge in hg.edges for v in edge), dtype=np.int64)
    cols = np.fromiter((e for e, edge in enumerate(hg.edges) for _ in edge), dtype=np.int64)
    data = np.ones(rows.shape[0], dtype=np.float64)
    return _from_csr(sp.csr_matrix((data, (rows, cols)), shape=(hg.n, hg.m)))


def clique_expand(hg: Hypergraph) -> PairwiseGraph:
    incidence = build_incidence(hg)
    adjacency = (incidence.node_major @ incidence.edge_major).tocsr()
    adjacency = (adjacency - sp.diags(adjacency.diagonal())).tocsr()
    adjacency.eliminate_zeros()
    adjacency.data[:] = 1.0
    adjacency.sort_indices()
    return PairwiseGraph(n=hg.n, adjacency=adjacency)


__all__ = ["Hypergraph", "IncidenceSystem", "PairwiseGraph", "build_incidence", "clique_expand"]
