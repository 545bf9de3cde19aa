"""Per-snapshot node features: state, diffusion time and Laplacian positional encoding"""

import logging
from typing import List, Union

import numpy as np
import pandas as pd
import scipy.sparse as sp
from attrs import define

from ..errors import DataError, ValidationError
from ..hypergraph import Hypergraph, IncidenceSystem, build_incidence, pseudo_inverse
from ..models import SnapshotSeries
from ..types import NEVER, FloatArray, IntArray, NodeState

logger = logging.getLogger(__name__)

# Eigenvalues at or below this count as zero
ZERO_EIGENVALUE_TOL = 1e-8
# Magnitude ties in the sign convention resolve to the lowest index
_SIGN_TIE_TOL = 1e-10


@define(frozen=True, eq=False)
class Snapshot:
    """One captured network state.

    Attributes:
        states: ``NodeState`` code per node.
        infection_time: first infection step per node, ``NEVER`` when never informed.
        capture_step: simulation step at which the snapshot was taken.
    """

    states: IntArray
    infection_time: IntArray
    capture_step: int

    @classmethod
    def from_series(cls, series: SnapshotSeries, index: int) -> "Snapshot":
        return cls(
            states=series.states[index],
            infection_time=series.cascade.infection_time,
            capture_step=series.times[index],
        )

    @property
    def n(self) -> int:
        return int(self.states.shape[0])

    @property
    def informed(self) -> np.ndarray:
        return (self.states == NodeState.INFORMED) | (self.states == NodeState.RECOVERED)


@define(frozen=True, eq=False)
class FeatureMatrix:
    """n×(2+k) features of one snapshot, columns ``[state | time | pe_0 … pe_{k-1}]``"""

    values: FloatArray

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def width(self) -> int:
        return int(self.values.shape[1])

    def to_frame(self, states: IntArray) -> pd.DataFrame:
        columns = ["state", "time"] + [f"pe_{j}" for j in range(self.width - 2)]
        frame = pd.DataFrame(self.values, columns=columns)
        frame.insert(0, "node", np.arange(self.n))
        frame["state"] = np.asarray(states, dtype=np.int64)
        return frame


@define(frozen=True, eq=False)
class InfectedLaplacian:
    """Symmetric normalised Laplacian of the informed sub-hypergraph.

    Attributes:
        nodes: informed node ids, ascending; row ``i`` of ``matrix`` belongs to ``nodes[i]``.
        matrix: |G⁺|×|G⁺| Laplacian.
        eigenvalues: ascending.
        eigenvectors: column-orthonormal, column ``j`` pairs with ``eigenvalues[j]``.
    """

    nodes: IntArray
    matrix: FloatArray
    eigenvalues: FloatArray
    eigenvectors: FloatArray


def state_feature(snapshot: Snapshot) -> FloatArray:
    return np.where(snapshot.informed, 1.0, -1.0)


def time_feature(snapshot: Snapshot) -> FloatArray:
    """Infection step over capture step for informed nodes, -1 otherwise.

    Raises:
        DataError: an informed node has no infection time, or one later than the capture.
    """
    informed = snapshot.informed
    times = snapshot.infection_time[informed]
    if np.any(times == NEVER) or np.any(times > snapshot.capture_step):
        bad = np.flatnonzero(informed)[(times == NEVER) | (times > snapshot.capture_step)]
        raise DataError(f"informed nodes {bad[:5].tolist()} lack a valid infection time")
    out = np.full(snapshot.n, -1.0)
    out[informed] = times / max(snapshot.capture_step, 1)
    return out


def infected_laplacian(hg: Union[Hypergraph, IncidenceSystem], snapshot: Snapshot) -> InfectedLaplacian:
    """Laplacian of the sub-hypergraph induced by informed nodes.

    Only hyperedges with at least one informed member survive; degrees are recounted inside the
    restriction and zero degrees map to zero under the pseudo-inverse.
    """
    incidence = hg if isinstance(hg, IncidenceSystem) else build_incidence(hg)
    nodes = np.flatnonzero(snapshot.informed)
    if nodes.size == 0:
        raise ValidationError("infected subgraph is empty")

    rows = incidence.node_major[nodes]
    kept = np.flatnonzero(np.asarray(rows.sum(axis=0)).ravel() > 0)
    h_plus = sp.csr_matrix(rows[:, kept])

    dv = np.asarray(h_plus.sum(axis=1)).ravel()
    de = np.asarray(h_plus.sum(axis=0)).ravel()
    dv_inv_sqrt = sp.diags(pseudo_inverse(dv, 0.5))
    adjacency = (dv_inv_sqrt @ h_plus @ sp.diags(pseudo_inverse(de)) @ h_plus.T @ dv_inv_sqrt).toarray()

    matrix = np.eye(nodes.size) - adjacency
    matrix = 0.5 * (matrix + matrix.T)
    eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    return InfectedLaplacian(nodes=nodes, matrix=matrix, eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def fix_sign(vector: FloatArray) -> FloatArray:
    """Flip ``vector`` so its largest-magnitude entry (lowest index on ties) is positive"""
    magnitude = np.abs(vector)
    if magnitude.size == 0:
        return vector
    pivot = int(np.flatnonzero(magnitude >= magnitude.max() - _SIGN_TIE_TOL)[0])
    return -vector if vector[pivot] < 0 else vector


def positional_feature(lap: InfectedLaplacian, k: int, snapshot: Snapshot) -> FloatArray:
    """Rows of the ``k`` eigenvectors with the smallest non-zero eigenvalues; -1 for uninformed nodes"""
    if k < 1:
        raise ValidationError(f"positional width must be positive, got {k}")
    chosen = np.flatnonzero(lap.eigenvalues > ZERO_EIGENVALUE_TOL)[:k]
    block = np.zeros((lap.nodes.size, k))
    for column, index in enumerate(chosen):
        block[:, column] = fix_sign(lap.eigenvectors[:, index])

    out = np.full((snapshot.n, k), -1.0)
    out[lap.nodes] = block
    return out


def encode_snapshot(
    incidence: IncidenceSystem, snapshot: Snapshot, k: int, positional_encoding: bool = True
) -> FeatureMatrix:
    columns = [state_feature(snapshot)[:, None], time_feature(snapshot)[:, None]]
    if positional_encoding:
        lap = infected_laplacian(incidence, snapshot)
        columns.append(positional_feature(lap, k, snapshot))
    return FeatureMatrix(values=np.hstack(columns))


def assemble_features(
    series: SnapshotSeries,
    hg: Union[Hypergraph, IncidenceSystem],
    k: int,
    positional_encoding: bool = True,
) -> List[FeatureMatrix]:
    """One FeatureMatrix per capture, earliest first.

    With ``positional_encoding=False`` the positional block is omitted and each matrix is n×2.
    """
    incidence = hg if isinstance(hg, IncidenceSystem) else build_incidence(hg)
    if incidence.n != series.n:
        raise DataError(f"snapshot covers {series.n} nodes, hypergraph has {incidence.n}")
    return [
        encode_snapshot(incidence, Snapshot.from_series(series, i), k, positional_encoding) for i in range(len(series))
    ]


__all__ = [
    "FeatureMatrix",
    "InfectedLaplacian",
    "Snapshot",
    "ZERO_EIGENVALUE_TOL",
    "assemble_features",
    "encode_snapshot",
    "fix_sign",
    "infected_laplacian",
    "positional_feature",
    "state_feature",
    "time_feature",
]
