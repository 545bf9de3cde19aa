"""Dataset directories, cascade-level splits and disjoint-union batches"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from attrs import define, field

from ..artifacts import PathLike, read_json
from ..errors import DataError, ParseError
from ..features import assemble_features
from ..hypergraph import GraphOperators, Hypergraph, IncidenceSystem, build_incidence, build_operators, load_hypergraph
from ..models import DatasetManifest, DatasetSplit, ModelConfig, SnapshotSeries
from ..seeding import derive_seed
from ..types import FloatArray
from .loss import node_weights

logger = logging.getLogger(__name__)

MANIFEST_FILE = "manifest.json"


@define(frozen=True, eq=False)
class TrainingSample:
    """Encoded snapshots and source labels of one cascade.

    Attributes:
        cascade_id: dataset id.
        features: one n×f matrix per capture, earliest first.
        labels: 1 for sources, 0 otherwise.
    """

    cascade_id: int
    features: Tuple[FloatArray, ...]
    labels: FloatArray

    def __attrs_post_init__(self) -> None:
        if int(self.labels.sum()) < 1:
            raise DataError(f"cascade {self.cascade_id} has no source")

    @property
    def n(self) -> int:
        return int(self.labels.shape[0])


@define(frozen=True, eq=False)
class Dataset:
    directory: Path
    manifest: DatasetManifest
    hypergraph: Hypergraph
    incidence: IncidenceSystem
    series: Dict[int, SnapshotSeries]

    @property
    def ids(self) -> List[int]:
        return self.manifest.ids


def _read_json_file(path: Path) -> dict:
    try:
        return read_json(path)
    except json.JSONDecodeError as exc:
        raise ParseError(str(path), exc.msg, line_number=exc.lineno) from exc
    except UnicodeDecodeError as exc:
        raise ParseError(str(path), "not valid UTF-8") from exc


def load_series(path: PathLike) -> SnapshotSeries:
    path = Path(path)
    try:
        return SnapshotSeries.from_dict(_read_json_file(path))
    except KeyError as exc:
        raise ParseError(str(path), f"missing field {exc.args[0]!r}") from exc
    except (DataError, ValueError, TypeError) as exc:
        raise ParseError(str(path), str(exc)) from exc


def load_dataset(directory: PathLike) -> Dataset:
    """Read a directory written by ``generate``.

    Raises:
        DataError: the manifest is missing or disagrees with the files it lists.
        ParseError: a file cannot be parsed (the message names it).
    """
    directory = Path(directory)
    manifest_path = directory / MANIFEST_FILE
    if not manifest_path.is_file():
        raise DataError(f"no {MANIFEST_FILE} in {directory}")
    try:
        manifest = DatasetManifest.from_dict(_read_json_file(manifest_path))
    except KeyError as exc:
        raise ParseError(str(manifest_path), f"missing field {exc.args[0]!r}") from exc

    hypergraph = load_hypergraph(directory / manifest.hypergraph)
    if hypergraph.n != manifest.n_nodes:
        raise DataError(f"manifest declares {manifest.n_nodes} nodes, hypergraph has {hypergraph.n}")

    series: Dict[int, SnapshotSeries] = {}
    lengths = set()
    for entry in manifest.cascades:
        s = load_series(directory / entry.file)
        if s.n != hypergraph.n:
            raise DataError(f"{entry.file} covers {s.n} nodes, hypergraph has {hypergraph.n}")
        series[entry.id] = s
        lengths.add(len(s))
    if len(lengths) > 1:
        raise DataError(f"cascades disagree on the number of captures: {sorted(lengths)}")

    logger.info("loaded %d cascades over %d nodes from %s", len(series), hypergraph.n, directory)
    return Dataset(
        directory=directory,
        manifest=manifest,
        hypergraph=hypergraph,
        incidence=build_incidence(hypergraph),
        series=series,
    )


def _half_up(value: float) -> int:
    return int(np.floor(value + 0.5))


def split_cascades(ids: Sequence[int], train_fraction: float, validation_fraction: float, seed: int) -> DatasetSplit:
    """Partition cascade ids into train/validation/test; never splits a cascade.

    ``round(train_fraction·N)`` ids (at least one, and at least one fewer than N) go to training, the
    rest to test; ``round(validation_fraction·train)`` of the training ids are then held out.
    """
    ids = list(ids)
    if len(ids) < 2:
        raise DataError(f"need at least 2 cascades to split, got {len(ids)}")
    rng = np.random.default_rng(derive_seed(seed, "split"))
    order = [ids[i] for i in rng.permutation(len(ids))]

    n_train = min(max(_half_up(train_fraction * len(ids)), 1), len(ids) - 1)
    n_validation = min(_half_up(validation_fraction * n_train), n_train - 1)
    return DatasetSplit(
        train=order[n_validation:n_train],
        validation=order[:n_validation],
        test=order[n_train:],
        seed=seed,
    )


def build_samples(dataset: Dataset, ids: Sequence[int], config: ModelConfig) -> List[TrainingSample]:
    samples = []
    for cascade_id in ids:
        series = dataset.series[cascade_id]
        matrices = assemble_features(series, dataset.incidence, config.pe_width, config.positional_encoding)
        samples.append(
            TrainingSample(
                cascade_id=cascade_id,
                features=tuple(m.values for m in matrices),
                labels=series.cascade.labels(),
            )
        )
    return samples


@define(frozen=True, eq=False)
class Batch:
    """Several cascades stacked as disjoint copies of one hypergraph"""

    cascade_ids: Tuple[int, ...]
    features: Tuple[FloatArray, ...]
    labels: FloatArray
    weights: FloatArray

    @property
    def copies(self) -> int:
        return len(self.cascade_ids)


def collate(samples: Sequence[TrainingSample]) -> Batch:
    if not samples:
        raise DataError("cannot collate an empty batch")
    length = len(samples[0].features)
    if any(len(s.features) != length for s in samples):
        raise DataError("samples in one batch must share the number of captures")
    return Batch(
        cascade_ids=tuple(s.cascade_id for s in samples),
        features=tuple(np.vstack([s.features[t] for s in samples]) for t in range(length)),
        labels=np.concatenate([s.labels for s in samples]),
        weights=np.concatenate([node_weights(s.labels) for s in samples]),
    )


@define(eq=False)
class OperatorCache:
    """Graph operators per number of tiled copies"""

    incidence: IncidenceSystem
    edge_weights: Optional[FloatArray] = None
    _cache: Dict[int, GraphOperators] = field(factory=dict, init=False)

    def get(self, copies: int = 1) -> GraphOperators:
        if copies not in self._cache:
            self._cache[copies] = build_operators(self.incidence, self.edge_weights, copies)
        return self._cache[copies]


__all__ = [
    "Batch",
    "Dataset",
    "MANIFEST_FILE",
    "OperatorCache",
    "TrainingSample",
    "build_samples",
    "collate",
    "load_dataset",
    "load_series",
    "split_cascades",
]
