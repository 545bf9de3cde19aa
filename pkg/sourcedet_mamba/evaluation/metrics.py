"""Thresholded detection metrics and rank-based AUC"""

from typing import Sequence

import numpy as np
import pandas as pd
from scipy.stats import rankdata

from ..errors import ContractError, ShapeError
from ..models import MetricSet
from ..types import FloatArray


def _check(scores: FloatArray, labels: FloatArray) -> tuple:
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels) > 0.5
    if scores.shape != labels.shape or scores.ndim != 1:
        raise ShapeError("metrics", scores.shape, labels.shape)
    positives = int(labels.sum())
    if positives == 0 or positives == labels.size:
        raise ContractError("labels need at least one source and one non-source")
    return scores, labels


def auc(scores: FloatArray, labels: FloatArray) -> float:
    """Mann-Whitney estimate of P(score(source) > score(non-source)), ties counting one half"""
    scores, labels = _check(scores, labels)
    ranks = rankdata(scores)
    n_pos = int(labels.sum())
    n_neg = labels.size - n_pos
    u = ranks[labels].sum() - n_pos * (n_pos + 1) / 2.0
    return float(u / (n_pos * n_neg))


def _precision_recall_f(predicted: np.ndarray, labels: np.ndarray) -> tuple:
    hits = int((predicted & labels).sum())
    n_predicted = int(predicted.sum())
    precision = hits / n_predicted if n_predicted else 0.0
    recall = hits / int(labels.sum())
    f = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return precision, recall, f


def metrics(scores: FloatArray, labels: FloatArray, threshold: float = 0.5) -> MetricSet:
    """Detection quality of ``ŝ = {v : score(v) ≥ threshold}`` against the true sources.

    Raises:
        ContractError: labels are all sources or all non-sources.
    """
    scores, labels = _check(scores, labels)
    predicted = scores >= threshold
    precision, recall, f = _precision_recall_f(predicted, labels)
    tpr = recall
    tnr = int((~predicted & ~labels).sum()) / int((~labels).sum())
    return MetricSet(
        acc=float((predicted == labels).mean()),
        balanced_acc=(tpr + tnr) / 2.0,
        precision=precision,
        recall=recall,
        f_score=f,
        auc=auc(scores, labels),
    )


def f_score(scores: FloatArray, labels: FloatArray, threshold: float = 0.5) -> float:
    scores, labels = _check(scores, labels)
    return _precision_recall_f(scores >= threshold, labels)[2]


def threshold_sweep(scores: FloatArray, labels: FloatArray, thresholds: Sequence[float]) -> pd.DataFrame:
    """Precision, recall and F-Score per threshold (columns ``threshold, precision, recall, f_score``)"""
    scores, labels = _check(scores, labels)
    rows = []
    for threshold in thresholds:
        precision, recall, f = _precision_recall_f(scores >= threshold, labels)
        rows.append({"threshold": float(threshold), "precision": precision, "recall": recall, "f_score": f})
    return pd.DataFrame(rows, columns=["threshold", "precision", "recall", "f_score"])


def best_threshold(sweep: pd.DataFrame) -> float:
    """Threshold with the highest F-Score; the lowest such threshold wins ties"""
    best = sweep["f_score"].max()
    return float(sweep.loc[sweep["f_score"] == best, "threshold"].min())


__all__ = ["auc", "best_threshold", "f_score", "metrics", "threshold_sweep"]
