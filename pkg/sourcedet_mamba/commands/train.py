import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from ..artifacts import write_csv, write_json
from ..errors import ConfigError
from ..runner import Runner
from ..training import (
    OperatorCache,
    SourceDetMamba,
    TrainingResult,
    build_samples,
    load_dataset,
    split_cascades,
    train,
)
from ..types import UNSET, Outcome, Unset

logger = logging.getLogger(__name__)

CHECKPOINT_FILE = "checkpoint.json"
LOG_FILE = "train_log.csv"
SPLIT_FILE = "split.json"


def _get_overrides(
    *,
    seed: Union[Unset, int] = UNSET,
    out: Union[Unset, str] = UNSET,
    data_dir: Union[Unset, str] = UNSET,
) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}

    overrides["seed"] = seed

    overrides["out"] = out

    overrides["data_dir"] = data_dir

    overrides = {k: v for k, v in overrides.items() if v is not UNSET and v is not None}

    return overrides


def train_model(runner: Runner) -> Outcome[TrainingResult]:
    """Split the dataset by cascade, fit a model and write checkpoint, log and split"""
    config = runner.resolved
    if config.data_dir is None:
        raise ConfigError("train needs a dataset directory (use --data or the 'data_dir' config key)")
    out = runner.out_dir
    model_config = config.model
    assert model_config.seed is not None

    dataset = load_dataset(config.data_dir)
    split = split_cascades(
        dataset.ids, model_config.train_fraction, model_config.validation_fraction, model_config.seed
    )
    logger.info(
        "split %d cascades: %d train, %d validation, %d test",
        len(dataset.ids),
        len(split.train),
        len(split.validation),
        len(split.test),
    )

    operators = OperatorCache(dataset.incidence, dataset.hypergraph.weights)
    result = train(
        SourceDetMamba(model_config),
        build_samples(dataset, split.train, model_config),
        model_config,
        operators,
        build_samples(dataset, split.validation, model_config),
    )

    artifacts: List[Path] = [write_json(out / SPLIT_FILE, split.to_dict())]
    result.model.save(out / CHECKPOINT_FILE)
    artifacts.append(out / CHECKPOINT_FILE)
    artifacts.append(write_csv(out / LOG_FILE, result.history))
    logger.info("trained %d epochs, kept epoch %d", len(result.history), result.best_epoch)
    return Outcome(out_dir=out, parsed=result, artifacts=artifacts)


def sync_detailed(
    *,
    runner: Runner,
    seed: Union[Unset, int] = UNSET,
    out: Union[Unset, str] = UNSET,
    data_dir: Union[Unset, str] = UNSET,
) -> Outcome[TrainingResult]:
    """Train a source detector on a generated dataset

    Args:
        seed (Union[Unset, int]): root seed; the split and initialisation seeds derive from it.
        out (Union[Unset, str]): training output directory.
        data_dir (Union[Unset, str]): dataset directory written by ``generate``.

    Raises:
        errors.DataError: the dataset has no manifest or is inconsistent.
        errors.ParseError: a dataset file is malformed.
        errors.TrainingError: the loss became non-finite.

    Returns:
        Outcome[TrainingResult]
    """

    overrides = _get_overrides(seed=seed, out=out, data_dir=data_dir)

    with runner.with_overrides(**overrides) as active:
        return train_model(active)


def sync(
    *,
    runner: Runner,
    seed: Union[Unset, int] = UNSET,
    out: Union[Unset, str] = UNSET,
    data_dir: Union[Unset, str] = UNSET,
) -> TrainingResult:
    """Train a source detector on a generated dataset

    Returns:
        TrainingResult
    """

    return sync_detailed(
        runner=runner,
        seed=seed,
        out=out,
        data_dir=data_dir,
    ).parsed
