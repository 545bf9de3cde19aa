"""Contains all the data models used in inputs/outputs"""

from .cascade_config import CascadeConfig
from .dataset_manifest import DATASET_FORMAT, CascadeEntry, DatasetManifest
from .dataset_split import DatasetSplit
from .detection_report import METRIC_NAMES, REPORT_FORMAT, DetectionReport, MetricSet
from .model_config import Activation, ModelConfig, Selection, SequenceModel
from .run_config import ABLATION_VARIANTS, AblationConfig, GraphConfig, RunConfig, SweepConfig
from .snapshot_series import SNAPSHOT_FORMAT, Cascade, SnapshotSeries

__all__ = (
    "ABLATION_VARIANTS",
    "AblationConfig",
    "Activation",
    "Cascade",
    "CascadeConfig",
    "CascadeEntry",
    "DATASET_FORMAT",
    "DatasetManifest",
    "DatasetSplit",
    "DetectionReport",
    "GraphConfig",
    "METRIC_NAMES",
    "MetricSet",
    "ModelConfig",
    "REPORT_FORMAT",
    "RunConfig",
    "SNAPSHOT_FORMAT",
    "Selection",
    "SequenceModel",
    "SnapshotSeries",
    "SweepConfig",
)
