"""Scoring test cascades and summarising detection quality"""

import logging
import time
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np
import pandas as pd
from attrs import define

from ..errors import ContractError
from ..hypergraph import PairwiseGraph
from ..models import METRIC_NAMES, REPORT_FORMAT, DetectionReport, SnapshotSeries
from ..training.dataset import OperatorCache, TrainingSample
from ..training.model import SourceDetMamba
from .baseline import jordan_center_baseline
from .metrics import metrics

logger = logging.getLogger(__name__)

MODEL_METHOD = "sourcedet_mamba"
BASELINE_METHOD = "jordan_center"
REPORT_COLUMNS = ["cascade_id", "method", *METRIC_NAMES, "n_predicted", "runtime_s"]


@define(frozen=True, eq=False)
class EvaluationResult:
    reports: List[DetectionReport]
    summary: pd.DataFrame

    def to_frame(self) -> pd.DataFrame:
        return reports_frame(self.reports)


def _report(
    cascade_id: int,
    method: str,
    scores: np.ndarray,
    labels: np.ndarray,
    threshold: float,
    runtime_s: float,
    fingerprint: str,
) -> DetectionReport:
    return DetectionReport(
        cascade_id=cascade_id,
        method=method,
        scores=scores,
        predicted=np.flatnonzero(scores >= threshold),
        metrics=metrics(scores, labels, threshold),
        runtime_s=runtime_s,
        config_fingerprint=fingerprint,
    )


def evaluate(
    model: SourceDetMamba,
    samples: Sequence[TrainingSample],
    operators: OperatorCache,
    threshold: float = 0.5,
    baseline_graph: Optional[PairwiseGraph] = None,
    series: Optional[Mapping[int, SnapshotSeries]] = None,
) -> EvaluationResult:
    """Score every sample with ``model`` and, when ``baseline_graph`` is given, with the Jordan-center
    baseline on each cascade's latest snapshot (which needs ``series``).
    """
    fingerprint = model.config.fingerprint()
    reports: List[DetectionReport] = []
    for sample in samples:
        start = time.perf_counter()
        scores = model.predict(sample.features, operators.get(1))
        runtime = time.perf_counter() - start
        reports.append(
            _report(sample.cascade_id, MODEL_METHOD, scores, sample.labels, threshold, runtime, fingerprint)
        )

    if baseline_graph is not None:
        if series is None:
            raise ContractError("baseline scoring needs the snapshot series")
        for sample in samples:
            latest = series[sample.cascade_id]
            start = time.perf_counter()
            scores = jordan_center_baseline(baseline_graph, latest.informed_mask(len(latest) - 1))
            runtime = time.perf_counter() - start
            reports.append(_report(sample.cascade_id, BASELINE_METHOD, scores, sample.labels, threshold, runtime, ""))

    summary = aggregate(reports)
    for row in summary.itertuples(index=False):
        logger.info(
            "%s: F %.4f ± %.4f, AUC %.4f over %d cascades",
            row.method,
            row.f_score_mean,
            row.f_score_std,
            row.auc_mean,
            row.n,
        )
    return EvaluationResult(reports=reports, summary=summary)


def reports_frame(reports: Sequence[DetectionReport]) -> pd.DataFrame:
    return pd.DataFrame([r.to_row() for r in reports], columns=REPORT_COLUMNS)


def aggregate(reports: Sequence[DetectionReport]) -> pd.DataFrame:
    """Mean and sample standard deviation of every metric per method (std 0 for a single cascade)"""
    frame = reports_frame(reports)
    grouped = frame.groupby("method", sort=False)[list(METRIC_NAMES)]
    means = grouped.mean().add_suffix("_mean")
    stds = grouped.std(ddof=1).fillna(0.0).add_suffix("_std")
    counts = grouped.size().rename("n")
    summary = pd.concat([means, stds, counts], axis=1).reset_index()
    ordered = ["method"] + [f"{m}_{s}" for m in METRIC_NAMES for s in ("mean", "std")] + ["n"]
    return summary[ordered]


def aggregate_dict(summary: pd.DataFrame, fingerprint: str) -> Dict[str, Any]:
    rows = []
    for record in summary.to_dict(orient="records"):
        row: Dict[str, Any] = {"method": record.pop("method"), "n": int(record.pop("n"))}
        row.update({key: float(value) for key, value in record.items()})
        rows.append(row)
    return {"format": REPORT_FORMAT, "rows": rows, "config_fingerprint": fingerprint}


__all__ = [
    "BASELINE_METHOD",
    "EvaluationResult",
    "MODEL_METHOD",
    "REPORT_COLUMNS",
    "aggregate",
    "aggregate_dict",
    "evaluate",
    "reports_frame",
]
