from typing import Any, Dict, List, Optional, Tuple, Type, TypeVar

import numpy as np
from attrs import define as _attrs_define
from attrs import field

from ..errors import DataError
from ..types import NEVER, FloatArray, IntArray, NodeState
from .cascade_config import CascadeConfig

SNAPSHOT_FORMAT = "sds-v1"

T = TypeVar("T", bound="SnapshotSeries")
C = TypeVar("C", bound="Cascade")


def _int_tuple(values: Any) -> Tuple[int, ...]:
    return tuple(int(v) for v in values)


@_attrs_define(frozen=True, eq=False)
class Cascade:
    """One realised propagation.

    Attributes:
        sources (Tuple[int, ...]): source node ids, ascending.
        infection_time (IntArray): first infection step per node, ``NEVER`` (-1) if never informed.
        node_rates (FloatArray): per-node low-order transmission rate.
    """

    sources: Tuple[int, ...] = field(converter=_int_tuple)
    infection_time: IntArray
    node_rates: FloatArray

    @property
    def n(self) -> int:
        return int(self.infection_time.shape[0])

    def labels(self) -> FloatArray:
        labels = np.zeros(self.n, dtype=np.float64)
        labels[list(self.sources)] = 1.0
        return labels

    def to_dict(self) -> Dict[str, Any]:
        infection_time: List[Optional[int]] = [None if t == NEVER else int(t) for t in self.infection_time]

        field_dict: Dict[str, Any] = {}
        field_dict.update(
            {
                "sources": list(self.sources),
                "infection_time": infection_time,
                "node_rates": [float(p) for p in self.node_rates],
            }
        )

        return field_dict

    @classmethod
    def from_dict(cls: Type[C], src_dict: Dict[str, Any]) -> C:
        d = src_dict.copy()
        sources = d.pop("sources")

        infection_time = np.array([NEVER if t is None else int(t) for t in d.pop("infection_time")], dtype=np.int64)

        node_rates = np.asarray(d.pop("node_rates", np.zeros(infection_time.shape[0])), dtype=np.float64)

        cascade = cls(
            sources=sources,
            infection_time=infection_time,
            node_rates=node_rates,
        )

        return cascade


@_attrs_define(frozen=True, eq=False)
class SnapshotSeries:
    """Snapshots captured from one cascade, earliest first.

    Attributes:
        times (Tuple[int, ...]): capture steps, non-decreasing.
        states (IntArray): k×n node states (``NodeState`` codes).
        cascade (Cascade): the underlying propagation.
        config (Optional[CascadeConfig]): settings the cascade was simulated with.
    """

    times: Tuple[int, ...] = field(converter=_int_tuple)
    states: IntArray
    cascade: Cascade
    config: Optional[CascadeConfig] = None

    def __attrs_post_init__(self) -> None:
        if self.states.ndim != 2 or self.states.shape[0] != len(self.times):
            raise DataError(f"states shape {self.states.shape} does not match {len(self.times)} capture times")
        if self.states.shape[1] != self.cascade.n:
            raise DataError(f"states cover {self.states.shape[1]} nodes, cascade covers {self.cascade.n}")
        if any(a > b for a, b in zip(self.times, self.times[1:])):
            raise DataError(f"capture times must not decrease: {self.times}")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def n(self) -> int:
        return int(self.states.shape[1])

    def informed_mask(self, index: int) -> np.ndarray:
        """Nodes in G⁺ at capture ``index``; RECOVERED counts as informed"""
        row = self.states[index]
        return (row == NodeState.INFORMED) | (row == NodeState.RECOVERED)

    def informed_fraction(self, index: int) -> float:
        return float(self.informed_mask(index).sum()) / max(self.n, 1)

    def to_dict(self) -> Dict[str, Any]:
        field_dict: Dict[str, Any] = {"format": SNAPSHOT_FORMAT}
        field_dict.update(
            {
                "times": list(self.times),
                "states": [[int(s) for s in row] for row in self.states],
            }
        )
        field_dict.update(self.cascade.to_dict())
        if self.config is not None:
            field_dict["config"] = self.config.to_dict()

        return field_dict

    @classmethod
    def from_dict(cls: Type[T], src_dict: Dict[str, Any]) -> T:
        d = src_dict.copy()
        fmt = d.pop("format", None)
        if fmt != SNAPSHOT_FORMAT:
            raise DataError(f"expected format {SNAPSHOT_FORMAT!r}, got {fmt!r}")

        times = d.pop("times")

        states = np.asarray(d.pop("states"), dtype=np.int64).reshape(len(times), -1)

        config: Optional[CascadeConfig] = None
        _config = d.pop("config", None)
        if _config is not None:
            config = CascadeConfig.from_dict(_config)

        cascade = Cascade.from_dict(d)

        snapshot_series = cls(
            times=times,
            states=states,
            cascade=cascade,
            config=config,
        )

        return snapshot_series
