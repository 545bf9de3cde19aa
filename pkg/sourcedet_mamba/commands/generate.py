import logging
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from attrs import evolve

from ..artifacts import write_csv, write_json
from ..diffusion import Topology, run_until_coverage
from ..features import Snapshot, encode_snapshot
from ..hypergraph import Hypergraph, build_incidence, generate_synthetic, load_hypergraph, save_hypergraph
from ..models import CascadeConfig, CascadeEntry, DatasetManifest, RunConfig, SnapshotSeries
from ..runner import Runner
from ..seeding import derive_seed
from ..training.dataset import MANIFEST_FILE
from ..types import UNSET, Outcome, Unset

logger = logging.getLogger(__name__)

HYPERGRAPH_FILE = "hypergraph.txt"
CASCADE_DIR = "cascades"
FEATURE_DIR = "features"


def _get_overrides(
    *,
    seed: Union[Unset, int] = UNSET,
    out: Union[Unset, str] = UNSET,
    n_cascades: Union[Unset, int] = UNSET,
    dump_features: Union[Unset, bool] = UNSET,
) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}

    overrides["seed"] = seed

    overrides["out"] = out

    overrides["n_cascades"] = n_cascades

    overrides["dump_features"] = dump_features

    overrides = {k: v for k, v in overrides.items() if v is not UNSET and v is not None}

    return overrides


def build_hypergraph(config: RunConfig) -> Hypergraph:
    graph = config.graph
    if graph.path is not None:
        return load_hypergraph(graph.path)
    return generate_synthetic(
        graph.n_nodes, graph.n_edges, graph.size_min, graph.size_max, seed=derive_seed(config.seed, "graph")
    )


def cascade_config(base: CascadeConfig, index: int) -> CascadeConfig:
    """Settings of cascade ``index``: the resolved cascade seed combined with the index"""
    root = 0 if base.seed is None else base.seed
    return evolve(base, seed=derive_seed(root, "cascade", index))


def _simulate(task: Tuple[Topology, CascadeConfig, int]) -> SnapshotSeries:
    topology, config, index = task
    return run_until_coverage(topology, config, cascade_index=index)


def dump_features(series: SnapshotSeries, hg: Hypergraph, pe_width: int, directory: Path) -> List[Path]:
    incidence = build_incidence(hg)
    written = []
    for index in range(len(series)):
        snapshot = Snapshot.from_series(series, index)
        matrix = encode_snapshot(incidence, snapshot, pe_width)
        written.append(write_csv(directory / f"features_{index}.csv", matrix.to_frame(snapshot.states)))
    return written


def generate_dataset(runner: Runner) -> Outcome[DatasetManifest]:
    """Write a hypergraph, ``n_cascades`` snapshot files and the manifest to the runner's output directory"""
    config = runner.resolved
    out = runner.out_dir
    artifacts: List[Path] = []

    hg = build_hypergraph(config)
    artifacts.append(save_hypergraph(hg, out / HYPERGRAPH_FILE))
    topology = Topology.of(hg)

    tasks = [(topology, cascade_config(config.cascade, i), i) for i in range(config.n_cascades)]
    all_series = runner.map(_simulate, tasks)

    entries = []
    for (_, cascade, index), series in zip(tasks, all_series):
        name = f"{CASCADE_DIR}/cascade_{index:04d}.json"
        artifacts.append(write_json(out / name, series.to_dict()))
        entries.append(CascadeEntry(id=index, file=name, seed=int(cascade.seed)))

    if config.dump_features and all_series:
        artifacts.extend(dump_features(all_series[0], hg, config.model.pe_width, out / FEATURE_DIR))

    manifest = DatasetManifest(hypergraph=HYPERGRAPH_FILE, n_nodes=hg.n, cascades=entries, config=config.to_dict())
    artifacts.append(write_json(out / MANIFEST_FILE, manifest.to_dict()))
    logger.info("generated %d cascades over %d nodes in %s", len(entries), hg.n, out)
    return Outcome(out_dir=out, parsed=manifest, artifacts=artifacts)


def sync_detailed(
    *,
    runner: Runner,
    seed: Union[Unset, int] = UNSET,
    out: Union[Unset, str] = UNSET,
    n_cascades: Union[Unset, int] = UNSET,
    dump_features: Union[Unset, bool] = UNSET,
) -> Outcome[DatasetManifest]:
    """Simulate a dataset of cascades on one hypergraph

    Args:
        seed (Union[Unset, int]): root seed.
        out (Union[Unset, str]): dataset directory.
        n_cascades (Union[Unset, int]): cascades to simulate. Default: 300.
        dump_features (Union[Unset, bool]): also write feature CSVs of the first cascade.

    Raises:
        errors.SimulationError: a cascade stalled on every attempt.
        errors.ArtifactError: the directory already holds a dataset.

    Returns:
        Outcome[DatasetManifest]
    """

    overrides = _get_overrides(seed=seed, out=out, n_cascades=n_cascades, dump_features=dump_features)

    with runner.with_overrides(**overrides) as active:
        return generate_dataset(active)


def sync(
    *,
    runner: Runner,
    seed: Union[Unset, int] = UNSET,
    out: Union[Unset, str] = UNSET,
    n_cascades: Union[Unset, int] = UNSET,
    dump_features: Union[Unset, bool] = UNSET,
) -> DatasetManifest:
    """Simulate a dataset of cascades on one hypergraph

    Returns:
        DatasetManifest
    """

    return sync_detailed(
        runner=runner,
        seed=seed,
        out=out,
        n_cascades=n_cascades,
        dump_features=dump_features,
    ).parsed
