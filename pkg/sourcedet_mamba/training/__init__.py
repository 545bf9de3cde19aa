"""Model assembly, objective, optimiser and the training loop"""

from .dataset import (
    MANIFEST_FILE,
    Batch,
    Dataset,
    OperatorCache,
    TrainingSample,
    build_samples,
    collate,
    load_dataset,
    load_series,
    split_cascades,
)
from .loss import balance_coefficient, balanced_loss, l2_penalty, node_weights
from .model import SourceDetMamba
from .optim import Adam
from .trainer import LOG_COLUMNS, TrainingResult, train, validation_f_score

__all__ = (
    "Adam",
    "Batch",
    "Dataset",
    "LOG_COLUMNS",
    "MANIFEST_FILE",
    "OperatorCache",
    "SourceDetMamba",
    "TrainingResult",
    "TrainingSample",
    "balance_coefficient",
    "balanced_loss",
    "build_samples",
    "collate",
    "l2_penalty",
    "load_dataset",
    "load_series",
    "node_weights",
    "split_cascades",
    "train",
    "validation_f_score",
)
