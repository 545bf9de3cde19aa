import logging
import time
from typing import Any, Dict, List, Union

import pandas as pd
from attrs import evolve

from ..artifacts import write_csv
from ..runner import Runner
from ..types import UNSET, Outcome, Unset
from ._pipeline import model_means, run_pipeline

logger = logging.getLogger(__name__)

SWEEP_FILE = "sweep.csv"
SWEEP_COLUMNS = ["initial_coverage", "interval", "seed", "f_score", "auc", "acc", "runtime_s"]


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


def cell_name(initial_coverage: float, interval: float) -> str:
    return f"cell_ic{initial_coverage:g}_iv{interval:g}"


def sweep_grid(runner: Runner) -> Outcome[pd.DataFrame]:
    """Run generate, train and eval for every (initial coverage, interval) cell of the grid.

    Each cell captures ``sweep.n_snapshots`` snapshots at ``initial_coverage + i·interval`` and simulates
    ``sweep.n_cascades`` cascades; its outputs go to a ``cell_*`` subdirectory. The table holds one row
    per cell with the model's mean test metrics and the cell's wall time.
    """
    config = runner.resolved
    out = runner.out_dir
    grid = config.sweep

    rows: List[Dict[str, Any]] = []
    for initial_coverage in grid.initial_coverages:
        for interval in grid.intervals:
            targets = grid.targets(initial_coverage, interval)
            cell = runner.with_config(
                evolve(
                    config,
                    n_cascades=grid.n_cascades,
                    cascade=evolve(config.cascade, coverage_targets=targets),
                )
            )
            logger.info("sweep cell: initial coverage %g, interval %g, targets %s", initial_coverage, interval, targets)

            start = time.perf_counter()
            result = run_pipeline(cell, out / cell_name(initial_coverage, interval))
            runtime = time.perf_counter() - start

            rows.append(
                {
                    "initial_coverage": initial_coverage,
                    "interval": interval,
                    "seed": config.seed,
                    **model_means(result),
                    "runtime_s": runtime,
                }
            )

    table = pd.DataFrame(rows, columns=SWEEP_COLUMNS)
    artifacts = [write_csv(out / SWEEP_FILE, table)]
    return Outcome(out_dir=out, parsed=table, artifacts=artifacts)


def sync_detailed(
    *,
    runner: Runner,
    seed: Union[Unset, int] = UNSET,
    out: Union[Unset, str] = UNSET,
) -> Outcome[pd.DataFrame]:
    """Sweep snapshot coverage and capture spacing

    Args:
        seed (Union[Unset, int]): root seed shared by every cell.
        out (Union[Unset, str]): sweep directory.

    Raises:
        errors.ConfigError: a grid cell asks for more than full coverage.
        errors.SimulationError: a cascade stalled on every attempt.

    Returns:
        Outcome[pd.DataFrame]
    """

    overrides = _get_overrides(seed=seed, out=out)

    with runner.with_overrides(**overrides) as active:
        return sweep_grid(active)


def sync(
    *,
    runner: Runner,
    seed: Union[Unset, int] = UNSET,
    out: Union[Unset, str] = UNSET,
) -> pd.DataFrame:
    """Sweep snapshot coverage and capture spacing

    Returns:
        pd.DataFrame
    """

    return sync_detailed(
        runner=runner,
        seed=seed,
        out=out,
    ).parsed
