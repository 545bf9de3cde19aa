import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from ..artifacts import read_json, write_csv, write_json
from ..errors import ConfigError, DataError
from ..evaluation import EvaluationResult, aggregate_dict, evaluate
from ..hypergraph import clique_expand
from ..models import DatasetSplit
from ..runner import Runner
from ..training import Dataset, OperatorCache, SourceDetMamba, build_samples, load_dataset, split_cascades
from ..types import UNSET, Outcome, Unset
from .train import CHECKPOINT_FILE, SPLIT_FILE

logger = logging.getLogger(__name__)

REPORT_FILE = "report.csv"
AGGREGATE_FILE = "aggregate.json"


def _get_overrides(
    *,
    out: Union[Unset, str] = UNSET,
    data_dir: Union[Unset, str] = UNSET,
    checkpoint: Union[Unset, str] = UNSET,
    threshold: Union[Unset, float] = UNSET,
    baseline: Union[Unset, bool] = UNSET,
) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}

    overrides["out"] = out

    overrides["data_dir"] = data_dir

    overrides["checkpoint"] = checkpoint

    overrides["threshold"] = threshold

    overrides["baseline"] = baseline

    overrides = {k: v for k, v in overrides.items() if v is not UNSET and v is not None}

    return overrides


def resolve_checkpoint(location: Union[str, Path]) -> Tuple[Path, Optional[Path]]:
    """Checkpoint file and, when ``location`` is a training directory, its split file"""
    location = Path(location)
    if location.is_dir():
        split = location / SPLIT_FILE
        return location / CHECKPOINT_FILE, split if split.is_file() else None
    return location, None


def held_out_ids(dataset: Dataset, model: SourceDetMamba, split_path: Optional[Path]) -> List[int]:
    """Held-out cascade ids: read from the training split, or recomputed from the checkpoint's seed"""
    if split_path is not None:
        split = DatasetSplit.from_dict(read_json(split_path))
        unknown = sorted(set(split.all_ids) - set(dataset.ids))
        if unknown:
            raise DataError(f"{split_path} names cascades missing from the dataset: {unknown[:5]}")
        return list(split.test)
    config = model.config
    assert config.seed is not None
    return list(split_cascades(dataset.ids, config.train_fraction, config.validation_fraction, config.seed).test)


def evaluate_model(runner: Runner) -> Outcome[EvaluationResult]:
    """Score the held-out cascades and write the per-cascade CSV and the aggregate JSON"""
    config = runner.resolved
    if config.data_dir is None:
        raise ConfigError("eval needs a dataset directory (use --data or the 'data_dir' config key)")
    if config.checkpoint is None:
        raise ConfigError("eval needs a checkpoint (use --checkpoint or the 'checkpoint' config key)")
    out = runner.out_dir

    checkpoint_path, split_path = resolve_checkpoint(config.checkpoint)
    model = SourceDetMamba.load(checkpoint_path)
    dataset = load_dataset(config.data_dir)
    samples = build_samples(dataset, held_out_ids(dataset, model, split_path), model.config)
    logger.info("evaluating %d held-out cascades", len(samples))

    result = evaluate(
        model,
        samples,
        OperatorCache(dataset.incidence, dataset.hypergraph.weights),
        threshold=config.threshold,
        baseline_graph=clique_expand(dataset.hypergraph) if config.baseline else None,
        series=dataset.series,
    )

    artifacts = [
        write_csv(out / REPORT_FILE, result.to_frame()),
        write_json(out / AGGREGATE_FILE, aggregate_dict(result.summary, model.config.fingerprint())),
    ]
    return Outcome(out_dir=out, parsed=result, artifacts=artifacts)


def sync_detailed(
    *,
    runner: Runner,
    out: Union[Unset, str] = UNSET,
    data_dir: Union[Unset, str] = UNSET,
    checkpoint: Union[Unset, str] = UNSET,
    threshold: Union[Unset, float] = UNSET,
    baseline: Union[Unset, bool] = UNSET,
) -> Outcome[EvaluationResult]:
    """Evaluate a trained detector on the test cascades of a dataset

    Args:
        out (Union[Unset, str]): report directory.
        data_dir (Union[Unset, str]): dataset directory written by ``generate``.
        checkpoint (Union[Unset, str]): training output directory or checkpoint file.
        threshold (Union[Unset, float]): decision threshold. Default: 0.5.
        baseline (Union[Unset, bool]): also score the Jordan-center baseline.

    Raises:
        errors.ContractError: the checkpoint does not match its own model config.
        errors.DataError: the dataset or split is inconsistent.

    Returns:
        Outcome[EvaluationResult]
    """

    overrides = _get_overrides(
        out=out,
        data_dir=data_dir,
        checkpoint=checkpoint,
        threshold=threshold,
        baseline=baseline,
    )

    with runner.with_overrides(**overrides) as active:
        return evaluate_model(active)


def sync(
    *,
    runner: Runner,
    out: Union[Unset, str] = UNSET,
    data_dir: Union[Unset, str] = UNSET,
    checkpoint: Union[Unset, str] = UNSET,
    threshold: Union[Unset, float] = UNSET,
    baseline: Union[Unset, bool] = UNSET,
) -> EvaluationResult:
    """Evaluate a trained detector on the test cascades of a dataset

    Returns:
        EvaluationResult
    """

    return sync_detailed(
        runner=runner,
        out=out,
        data_dir=data_dir,
        checkpoint=checkpoint,
        threshold=threshold,
        baseline=baseline,
    ).parsed
