import copy
from pathlib import Path
from typing import Any, Dict

import pytest

from sourcedet_mamba.commands import generate
from sourcedet_mamba.models import ModelConfig, RunConfig
from sourcedet_mamba.runner import Runner

TINY_RUN: Dict[str, Any] = {
    "seed": 7,
    "n_cascades": 6,
    "graph": {"n_nodes": 30, "n_edges": 14, "size_min": 2, "size_max": 4},
    "cascade": {"p_low_range": [0.3, 0.8]},
    "model": {
        "hgnn_width": 4,
        "pe_width": 2,
        "n_blocks": 1,
        "d_state": 2,
        "channels": 3,
        "edge_hidden": 4,
        "epochs": 2,
        "batch_size": 4,
        "patience": 5,
        "train_fraction": 0.5,
        "validation_fraction": 0.0,
    },
    "sweep": {"initial_coverages": [0.1], "intervals": [0.05, 0.1], "n_snapshots": 2, "n_cascades": 4},
    "ablation": {"variants": ["full", "no_graph"], "seeds": 1},
}


@pytest.fixture
def tiny_run() -> Dict[str, Any]:
    return copy.deepcopy(TINY_RUN)


@pytest.fixture
def tiny_config(tiny_run) -> RunConfig:
    return RunConfig.from_dict(tiny_run)


@pytest.fixture
def tiny_model_config(tiny_config) -> ModelConfig:
    return tiny_config.resolved().model


@pytest.fixture
def dataset_dir(tmp_path, tiny_config) -> Path:
    directory = tmp_path / "data"
    generate.sync(runner=Runner(config=tiny_config), out=str(directory))
    return directory
