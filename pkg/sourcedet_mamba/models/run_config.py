from typing import Any, Dict, Optional, Tuple, Type, TypeVar

from attrs import define as _attrs_define
from attrs import evolve, field

from ..seeding import derive_seed
from ._fields import float_tuple, reject_unknown, require, strict_bool
from .cascade_config import CascadeConfig
from .model_config import ModelConfig

G = TypeVar("G", bound="GraphConfig")
S = TypeVar("S", bound="SweepConfig")
A = TypeVar("A", bound="AblationConfig")
T = TypeVar("T", bound="RunConfig")

ABLATION_VARIANTS: Tuple[str, ...] = (
    "full",
    "no_graph",
    "no_edge_weights",
    "no_pe",
    "single_snapshot",
    "attention",
    "lstm",
    "attention_lstm",
)


def _optional_str(value: Any) -> Optional[str]:
    return None if value is None else str(value)


@_attrs_define(frozen=True)
class GraphConfig:
    """Where the hypergraph comes from.

    Attributes:
        path (Optional[str]): hypergraph text file; when None a synthetic hypergraph is generated.
        n_nodes (int): synthetic node count. Default: 200.
        n_edges (int): synthetic hyperedge count. Default: 80.
        size_min (int): smallest synthetic edge. Default: 2.
        size_max (int): largest synthetic edge before the repair pass. Default: 5.
    """

    path: Optional[str] = field(default=None, converter=_optional_str)
    n_nodes: int = field(default=200, converter=int)
    n_edges: int = field(default=80, converter=int)
    size_min: int = field(default=2, converter=int)
    size_max: int = field(default=5, converter=int)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "path": self.path,
            "n_nodes": self.n_nodes,
            "n_edges": self.n_edges,
            "size_min": self.size_min,
            "size_max": self.size_max,
        }

    @classmethod
    def from_dict(cls: Type[G], src_dict: Dict[str, Any]) -> G:
        d = src_dict.copy()
        values = {key: d.pop(key, default) for key, default in cls().to_dict().items()}
        reject_unknown("graph", d)

        return cls(**values)


@_attrs_define(frozen=True)
class SweepConfig:
    """Grid over the first capture's coverage and the spacing of later captures.

    Attributes:
        initial_coverages (Tuple[float, ...]): coverage of the first snapshot. Default: (0.1, 0.2, 0.3).
        intervals (Tuple[float, ...]): coverage gap between consecutive snapshots. Default: 0.05 to 0.25.
        n_snapshots (int): captures per cascade. Default: 3.
        n_cascades (int): cascades generated per grid cell. Default: 100.
    """

    initial_coverages: Tuple[float, ...] = field(default=(0.1, 0.2, 0.3), converter=float_tuple)
    intervals: Tuple[float, ...] = field(default=(0.05, 0.1, 0.15, 0.2, 0.25), converter=float_tuple)
    n_snapshots: int = field(default=3, converter=int)
    n_cascades: int = field(default=100, converter=int)

    def __attrs_post_init__(self) -> None:
        require(len(self.initial_coverages) >= 1 and len(self.intervals) >= 1, "sweep grid must not be empty")
        require(self.n_snapshots >= 1, "n_snapshots must be positive")
        require(self.n_cascades >= 2, "n_cascades must be at least 2")

    def targets(self, initial_coverage: float, interval: float) -> Tuple[float, ...]:
        targets = [round(initial_coverage + i * interval, 10) for i in range(self.n_snapshots)]
        require(targets[-1] <= 1.0, f"coverage grid cell ({initial_coverage}, {interval}) exceeds full coverage")
        return tuple(targets)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "initial_coverages": list(self.initial_coverages),
            "intervals": list(self.intervals),
            "n_snapshots": self.n_snapshots,
            "n_cascades": self.n_cascades,
        }

    @classmethod
    def from_dict(cls: Type[S], src_dict: Dict[str, Any]) -> S:
        d = src_dict.copy()
        values = {key: d.pop(key, default) for key, default in cls().to_dict().items()}
        reject_unknown("sweep", d)

        return cls(**values)


@_attrs_define(frozen=True)
class AblationConfig:
    """Architecture variants compared by the ``ablate`` command.

    Attributes:
        variants (Tuple[str, ...]): subset of ``ABLATION_VARIANTS``.
        seeds (int): independent datasets and trainings per variant. Default: 5.
    """

    variants: Tuple[str, ...] = field(default=ABLATION_VARIANTS, converter=tuple)
    seeds: int = field(default=5, converter=int)

    def __attrs_post_init__(self) -> None:
        unknown = [v for v in self.variants if v not in ABLATION_VARIANTS]
        require(not unknown, f"unknown ablation variants {unknown}; choose from {list(ABLATION_VARIANTS)}")
        require(self.seeds >= 1, "ablation seeds must be positive")

    def to_dict(self) -> Dict[str, Any]:
        return {"variants": list(self.variants), "seeds": self.seeds}

    @classmethod
    def from_dict(cls: Type[A], src_dict: Dict[str, Any]) -> A:
        d = src_dict.copy()
        values = {key: d.pop(key, default) for key, default in cls().to_dict().items()}
        reject_unknown("ablation", d)

        return cls(**values)


@_attrs_define(frozen=True)
class RunConfig:
    """Everything one CLI invocation needs.

    Attributes:
        seed (int): root seed; every random stream is derived from it. Default: 42.
        n_cascades (int): cascades per generated dataset. Default: 300.
        graph (GraphConfig): hypergraph source.
        cascade (CascadeConfig): propagation settings.
        model (ModelConfig): architecture and optimisation settings.
        sweep (SweepConfig): coverage/interval grid.
        ablation (AblationConfig): variants for the ablation study.
        data_dir (Optional[str]): dataset directory read by train/eval.
        checkpoint (Optional[str]): training output directory (or checkpoint file) read by eval.
        out (Optional[str]): output directory.
        threshold (float): decision threshold on source scores. Default: 0.5.
        baseline (bool): also score the Jordan-center baseline during eval. Default: False.
        jobs (int): worker processes. Default: 1.
        dump_features (bool): write feature CSVs for the first cascade during generate. Default: False.
    """

    seed: int = field(default=42, converter=int)
    n_cascades: int = field(default=300, converter=int)
    graph: GraphConfig = field(factory=GraphConfig)
    cascade: CascadeConfig = field(factory=CascadeConfig)
    model: ModelConfig = field(factory=ModelConfig)
    sweep: SweepConfig = field(factory=SweepConfig)
    ablation: AblationConfig = field(factory=AblationConfig)
    data_dir: Optional[str] = field(default=None, converter=_optional_str)
    checkpoint: Optional[str] = field(default=None, converter=_optional_str)
    out: Optional[str] = field(default=None, converter=_optional_str)
    threshold: float = field(default=0.5, converter=float)
    baseline: bool = field(default=False, converter=strict_bool)
    jobs: int = field(default=1, converter=int)
    dump_features: bool = field(default=False, converter=strict_bool)

    def __attrs_post_init__(self) -> None:
        require(self.n_cascades >= 1, "n_cascades must be positive")
        require(0 < self.threshold < 1, f"threshold must lie in (0, 1), got {self.threshold}")
        require(self.jobs >= 1, "jobs must be positive")

    def resolved(self) -> "RunConfig":
        """Fill derived seeds so the persisted config reproduces the run on its own"""
        cascade = self.cascade
        if cascade.seed is None:
            cascade = evolve(cascade, seed=derive_seed(self.seed, "cascade"))
        model = self.model
        if model.seed is None:
            model = model.with_seed(derive_seed(self.seed, "model"))
        return evolve(self, cascade=cascade, model=model)

    def to_dict(self) -> Dict[str, Any]:
        field_dict: Dict[str, Any] = {}
        field_dict.update(
            {
                "seed": self.seed,
                "n_cascades": self.n_cascades,
                "graph": self.graph.to_dict(),
                "cascade": self.cascade.to_dict(),
                "model": self.model.to_dict(),
                "sweep": self.sweep.to_dict(),
                "ablation": self.ablation.to_dict(),
                "data_dir": self.data_dir,
                "checkpoint": self.checkpoint,
                "out": self.out,
                "threshold": self.threshold,
                "baseline": self.baseline,
                "jobs": self.jobs,
                "dump_features": self.dump_features,
            }
        )

        return field_dict

    @classmethod
    def from_dict(cls: Type[T], src_dict: Dict[str, Any]) -> T:
        d = src_dict.copy()
        defaults = cls()

        graph = GraphConfig.from_dict(d.pop("graph", {}))

        cascade = CascadeConfig.from_dict(d.pop("cascade", {}))

        model = ModelConfig.from_dict(d.pop("model", {}))

        sweep = SweepConfig.from_dict(d.pop("sweep", {}))

        ablation = AblationConfig.from_dict(d.pop("ablation", {}))

        run_config = cls(
            seed=d.pop("seed", defaults.seed),
            n_cascades=d.pop("n_cascades", defaults.n_cascades),
            graph=graph,
            cascade=cascade,
            model=model,
            sweep=sweep,
            ablation=ablation,
            data_dir=d.pop("data_dir", defaults.data_dir),
            checkpoint=d.pop("checkpoint", defaults.checkpoint),
            out=d.pop("out", defaults.out),
            threshold=d.pop("threshold", defaults.threshold),
            baseline=d.pop("baseline", defaults.baseline),
            jobs=d.pop("jobs", defaults.jobs),
            dump_features=d.pop("dump_features", defaults.dump_features),
        )
        reject_unknown("run", d)

        return run_config
