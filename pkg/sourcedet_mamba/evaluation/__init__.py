"""Detection metrics, the Jordan-center baseline and report assembly"""

from .baseline import jordan_center_baseline
from .evaluate import (
    BASELINE_METHOD,
    MODEL_METHOD,
    REPORT_COLUMNS,
    EvaluationResult,
    aggregate,
    aggregate_dict,
    evaluate,
    reports_frame,
)
from .metrics import auc, best_threshold, f_score, metrics, threshold_sweep

__all__ = (
    "BASELINE_METHOD",
    "EvaluationResult",
    "MODEL_METHOD",
    "REPORT_COLUMNS",
    "aggregate",
    "aggregate_dict",
    "auc",
    "best_threshold",
    "evaluate",
    "f_score",
    "jordan_center_baseline",
    "metrics",
    "reports_frame",
    "threshold_sweep",
)
