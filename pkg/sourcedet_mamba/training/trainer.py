"""Minibatch training with early stopping on validation F-Score"""

import logging
import math
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from attrs import define

from ..errors import NumericError, TrainingError
from ..evaluation.metrics import f_score
from ..models import ModelConfig
from ..seeding import rng_for
from ..types import FloatArray
from .dataset import OperatorCache, TrainingSample, collate
from .loss import balanced_loss
from .model import SourceDetMamba
from .optim import Adam

logger = logging.getLogger(__name__)

LOG_COLUMNS = ["epoch", "train_loss", "val_f_score"]


@define(eq=False)
class TrainingResult:
    """
    Attributes:
        model: the model carrying the best weights seen.
        history: one row per epoch with columns ``epoch, train_loss, val_f_score``.
        best_epoch: epoch whose weights were kept.
        stopped_early: patience ran out before ``epochs``.
    """

    model: SourceDetMamba
    history: pd.DataFrame
    best_epoch: int
    stopped_early: bool


def validation_f_score(
    model: SourceDetMamba, samples: Sequence[TrainingSample], operators: OperatorCache, threshold: float = 0.5
) -> float:
    """Mean F-Score over ``samples``, each cascade scored on its own"""
    values = [f_score(model.predict(s.features, operators.get(1)), s.labels, threshold) for s in samples]
    return float(np.mean(values)) if values else math.nan


def train(
    model: SourceDetMamba,
    train_samples: Sequence[TrainingSample],
    config: ModelConfig,
    operators: OperatorCache,
    validation_samples: Sequence[TrainingSample] = (),
) -> TrainingResult:
    """Fit ``model`` with Adam on the class-balanced loss.

    Without validation samples the lowest training loss selects the kept weights.

    Raises:
        TrainingError: a batch produced a non-finite loss.
    """
    if not train_samples:
        raise TrainingError(0, 0, None)
    seed = config.seed if config.seed is not None else 0
    rng = rng_for(seed, "shuffle")
    optimizer = Adam(model.parameters(), lr=config.learning_rate)
    parameters = model.parameters()

    rows: List[Dict[str, float]] = []
    best_score = -math.inf
    best_epoch = 0
    best_state: Optional[Dict[str, FloatArray]] = None
    last_finite: Optional[float] = None
    waited = 0
    stopped_early = False

    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(len(train_samples))
        losses = []
        for batch_index, start in enumerate(range(0, len(order), config.batch_size)):
            batch = collate([train_samples[i] for i in order[start : start + config.batch_size]])
            optimizer.zero_grad()
            try:
                scores = model(batch.features, operators.get(batch.copies))
                loss = balanced_loss(scores, batch.labels, parameters, config.weight_decay, batch.weights)
            except NumericError as exc:
                raise TrainingError(epoch, batch_index, last_finite) from exc
            value = loss.item()
            if not math.isfinite(value):
                raise TrainingError(epoch, batch_index, last_finite)
            loss.backward()
            optimizer.step()
            last_finite = value
            losses.append(value)

        train_loss = float(np.mean(losses))
        val_f = validation_f_score(model, validation_samples, operators)
        rows.append({"epoch": epoch, "train_loss": train_loss, "val_f_score": val_f})
        logger.info("epoch %d: train loss %.6f, validation F %.4f", epoch, train_loss, val_f)

        score = val_f if validation_samples else -train_loss
        if score > best_score:
            best_score, best_epoch, best_state = score, epoch, model.state_dict()
            waited = 0
        else:
            waited += 1
            if waited >= config.patience:
                stopped_early = True
                logger.info("early stop at epoch %d; keeping epoch %d", epoch, best_epoch)
                break

    if best_state is not None:
        model.load_state_dict(best_state)
    return TrainingResult(
        model=model,
        history=pd.DataFrame(rows, columns=LOG_COLUMNS),
        best_epoch=best_epoch,
        stopped_early=stopped_early,
    )


__all__ = ["LOG_COLUMNS", "TrainingResult", "train", "validation_f_score"]
