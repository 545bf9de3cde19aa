import logging
from typing import Any, Dict, List, Union

import pandas as pd
from attrs import evolve

from ..artifacts import write_csv, write_json
from ..models import ModelConfig, RunConfig, SequenceModel
from ..runner import Runner
from ..seeding import derive_seed
from ..types import UNSET, Outcome, Unset
from ._pipeline import DATA_DIR, model_means, run_pipeline
from .generate import generate_dataset

logger = logging.getLogger(__name__)

ABLATION_FILE = "ablation.csv"
SUMMARY_FILE = "ablation_summary.json"
ABLATION_COLUMNS = ["variant", "seed", "f_score", "auc", "acc"]

_VARIANT_CHANGES: Dict[str, Dict[str, Any]] = {
    "full": {},
    "no_graph": {"graph_coupling": False},
    "no_edge_weights": {"edge_weights": False},
    "no_pe": {"positional_encoding": False},
    "single_snapshot": {"single_snapshot": True},
    "attention": {"sequence": SequenceModel.ATTENTION},
    "lstm": {"sequence": SequenceModel.LSTM},
    "attention_lstm": {"sequence": SequenceModel.ATTENTION_LSTM},
}


def _get_overrides(
    *,
    seed: Union[Unset, int] = UNSET,
    out: Union[Unset, str] = UNSET,
) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}

    overrides["seed"] = seed

    overrides["out"] = out

    overrides = {k: v for k, v in overrides.items() if v is not UNSET and v is not None}

    return overrides


def variant_config(model: ModelConfig, variant: str) -> ModelConfig:
    return evolve(model, **_VARIANT_CHANGES[variant])


def seed_config(config: RunConfig, index: int) -> RunConfig:
    """Run config of ablation seed ``index``; cascade and model seeds are re-derived from the new root"""
    return evolve(
        config,
        seed=derive_seed(config.seed, "ablation", index),
        cascade=evolve(config.cascade, seed=None),
        model=evolve(config.model, seed=None),
    ).resolved()


def summarize(table: pd.DataFrame) -> Dict[str, Any]:
    means = table.groupby("variant", sort=False)["f_score"].mean()
    return {
        "mean_f_score": {variant: float(value) for variant, value in means.items()},
        "seeds": int(table["seed"].nunique()),
    }


def ablate_variants(runner: Runner) -> Outcome[pd.DataFrame]:
    """Train and evaluate every ablation variant on one shared dataset per seed.

    All variants of a seed see the same cascades, split and initialisation seed, so they differ only
    in the switched-off component.
    """
    config = runner.config
    out = runner.out_dir
    study = config.ablation

    rows: List[Dict[str, Any]] = []
    for index in range(study.seeds):
        per_seed = seed_config(config, index)
        directory = out / f"seed_{index}"
        data_dir = directory / DATA_DIR
        with runner.with_config(per_seed).with_out(data_dir) as active:
            generate_dataset(active)

        for variant in study.variants:
            logger.info("ablation seed %d: variant %s", index, variant)
            variant_runner = runner.with_config(evolve(per_seed, model=variant_config(per_seed.model, variant)))
            result = run_pipeline(variant_runner, directory / variant, data_dir=data_dir)
            rows.append({"variant": variant, "seed": per_seed.seed, **model_means(result)})

    table = pd.DataFrame(rows, columns=ABLATION_COLUMNS)
    artifacts = [
        write_csv(out / ABLATION_FILE, table),
        write_json(out / SUMMARY_FILE, summarize(table)),
    ]
    return Outcome(out_dir=out, parsed=table, artifacts=artifacts)


def sync_detailed(
    *,
    runner: Runner,
    seed: Union[Unset, int] = UNSET,
    out: Union[Unset, str] = UNSET,
) -> Outcome[pd.DataFrame]:
    """Compare the full model against its ablated variants

    Args:
        seed (Union[Unset, int]): root of the per-seed roots.
        out (Union[Unset, str]): ablation directory.

    Raises:
        errors.SimulationError: a cascade stalled on every attempt.
        errors.TrainingError: a variant's loss became non-finite.

    Returns:
        Outcome[pd.DataFrame]
    """

    overrides = _get_overrides(seed=seed, out=out)

    with runner.with_overrides(**overrides) as active:
        return ablate_variants(active)


def sync(
    *,
    runner: Runner,
    seed: Union[Unset, int] = UNSET,
    out: Union[Unset, str] = UNSET,
) -> pd.DataFrame:
    """Compare the full model against its ablated variants

    Returns:
        pd.DataFrame
    """

    return sync_detailed(
        runner=runner,
        seed=seed,
        out=out,
    ).parsed
