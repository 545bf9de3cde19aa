from typing import Any, Dict, Tuple, Type, TypeVar

import numpy as np
from attrs import define as _attrs_define
from attrs import field

from ..types import FloatArray

M = TypeVar("M", bound="MetricSet")
T = TypeVar("T", bound="DetectionReport")

REPORT_FORMAT = "sdm-report-v1"
METRIC_NAMES: Tuple[str, ...] = ("acc", "balanced_acc", "precision", "recall", "f_score", "auc")


@_attrs_define(frozen=True)
class MetricSet:
    """Detection quality for one cascade; every value lies in [0, 1].

    Attributes:
        acc (float): share of correctly classified nodes.
        balanced_acc (float): mean of the true-positive and true-negative rates.
        precision (float): |ŝ ∩ s| / |ŝ|, 0 when nothing is predicted.
        recall (float): |ŝ ∩ s| / |s|.
        f_score (float): harmonic mean of precision and recall, 0 when both are 0.
        auc (float): probability that a source outscores a non-source (ties count half).
    """

    acc: float
    balanced_acc: float
    precision: float
    recall: float
    f_score: float
    auc: float

    def to_dict(self) -> Dict[str, Any]:
        return {name: float(getattr(self, name)) for name in METRIC_NAMES}

    @classmethod
    def from_dict(cls: Type[M], src_dict: Dict[str, Any]) -> M:
        d = src_dict.copy()
        return cls(**{name: float(d.pop(name)) for name in METRIC_NAMES})


@_attrs_define(frozen=True, eq=False)
class DetectionReport:
    """Scores, detected sources and metrics for one test cascade.

    Attributes:
        cascade_id (int): dataset id of the cascade.
        method (str): scoring method, e.g. ``sourcedet_mamba`` or ``jordan_center``.
        scores (FloatArray): per-node source scores.
        predicted (Tuple[int, ...]): ŝ, nodes scoring at or above the threshold.
        metrics (MetricSet): detection quality.
        runtime_s (float): wall-clock scoring time.
        config_fingerprint (str): sha256 of the model configuration used.
    """

    cascade_id: int
    method: str
    scores: FloatArray
    predicted: Tuple[int, ...] = field(converter=lambda v: tuple(int(x) for x in v))
    metrics: MetricSet
    runtime_s: float
    config_fingerprint: str = ""

    def to_row(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {"cascade_id": self.cascade_id, "method": self.method}
        row.update(self.metrics.to_dict())
        row["n_predicted"] = len(self.predicted)
        row["runtime_s"] = self.runtime_s
        return row

    def to_dict(self) -> Dict[str, Any]:
        field_dict: Dict[str, Any] = {}
        field_dict.update(
            {
                "cascade_id": self.cascade_id,
                "method": self.method,
                "scores": [float(s) for s in self.scores],
                "predicted": list(self.predicted),
                "metrics": self.metrics.to_dict(),
                "runtime_s": self.runtime_s,
                "config_fingerprint": self.config_fingerprint,
            }
        )

        return field_dict

    @classmethod
    def from_dict(cls: Type[T], src_dict: Dict[str, Any]) -> T:
        d = src_dict.copy()

        detection_report = cls(
            cascade_id=int(d.pop("cascade_id")),
            method=d.pop("method"),
            scores=np.asarray(d.pop("scores"), dtype=np.float64),
            predicted=d.pop("predicted"),
            metrics=MetricSet.from_dict(d.pop("metrics")),
            runtime_s=float(d.pop("runtime_s")),
            config_fingerprint=d.pop("config_fingerprint", ""),
        )

        return detection_report
