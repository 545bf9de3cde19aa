import hashlib
import json
from enum import Enum
from typing import Any, Dict, Optional, Type, TypeVar

from attrs import define as _attrs_define
from attrs import evolve, field

from ._fields import enum_value, reject_unknown, require, strict_bool

T = TypeVar("T", bound="ModelConfig")


class Activation(str, Enum):
    RELU = "relu"
    SOFTPLUS = "softplus"
    TANH = "tanh"
    IDENTITY = "identity"


class Selection(str, Enum):
    """Granularity at which B, C and Δ follow the input"""

    NODE = "node"
    GRAPH = "graph"


class SequenceModel(str, Enum):
    """Sequence layer stacked over the fused snapshots"""

    SSM = "ssm"
    ATTENTION = "attention"
    LSTM = "lstm"
    ATTENTION_LSTM = "attention_lstm"


@_attrs_define(frozen=True)
class ModelConfig:
    """Architecture and optimisation settings.

    Attributes:
        hgnn_width (int): output width of the HGNN feature-fusion layer. Default: 32.
        pe_width (int): number of Laplacian eigenvectors per node. Default: 8.
        n_blocks (int): graph-aware SSM blocks in the residual stack. Default: 2.
        d_state (int): state size per channel (128 for large graphs). Default: 16.
        channels (int): channels fed through the SSM blocks. Default: 32.
        edge_hidden (int): hidden width of the hyperedge-weight head. Default: 64.
        activation (Activation): nonlinearity of the HGNN layer and the edge head. Default: relu.
        selective (bool): B, C, Δ depend on the input; False gives a time-invariant block. Default: True.
        selection (Selection): per-node or per-graph selective parameters. Default: node.
        graph_coupling (bool): add the neighbour term to the state update. Default: True.
        edge_weights (bool): learn hyperedge weights; False fixes Ω to the identity. Default: True.
        positional_encoding (bool): include the Laplacian positional columns. Default: True.
        single_snapshot (bool): keep only the earliest snapshot. Default: False.
        sequence (SequenceModel): graph-aware SSM blocks, or temporal attention, an LSTM, or attention
            followed by an LSTM in their place. Default: ssm.
        learning_rate (float): Adam step size. Default: 1e-3.
        weight_decay (float): λ of the L2 loss term. Default: 1e-5.
        epochs (int): maximum training epochs. Default: 200.
        batch_size (int): cascades per minibatch. Default: 16.
        patience (int): epochs without validation improvement before stopping. Default: 30.
        train_fraction (float): share of cascades used for training. Default: 0.8.
        validation_fraction (float): share of the training cascades held out for early stopping. Default: 0.1.
        seed (Optional[int]): parameter-initialisation seed; derived from the run seed when None.
    """

    hgnn_width: int = field(default=32, converter=int)
    pe_width: int = field(default=8, converter=int)
    n_blocks: int = field(default=2, converter=int)
    d_state: int = field(default=16, converter=int)
    channels: int = field(default=32, converter=int)
    edge_hidden: int = field(default=64, converter=int)
    activation: Activation = field(default=Activation.RELU, converter=lambda v: enum_value(Activation, v))
    selective: bool = field(default=True, converter=strict_bool)
    selection: Selection = field(default=Selection.NODE, converter=lambda v: enum_value(Selection, v))
    graph_coupling: bool = field(default=True, converter=strict_bool)
    edge_weights: bool = field(default=True, converter=strict_bool)
    positional_encoding: bool = field(default=True, converter=strict_bool)
    single_snapshot: bool = field(default=False, converter=strict_bool)
    sequence: SequenceModel = field(default=SequenceModel.SSM, converter=lambda v: enum_value(SequenceModel, v))
    learning_rate: float = field(default=1e-3, converter=float)
    weight_decay: float = field(default=1e-5, converter=float)
    epochs: int = field(default=200, converter=int)
    batch_size: int = field(default=16, converter=int)
    patience: int = field(default=30, converter=int)
    train_fraction: float = field(default=0.8, converter=float)
    validation_fraction: float = field(default=0.1, converter=float)
    seed: Optional[int] = None

    def __attrs_post_init__(self) -> None:
        for name in ("hgnn_width", "pe_width", "n_blocks", "d_state", "channels", "edge_hidden", "epochs"):
            require(getattr(self, name) >= 1, f"{name} must be positive, got {getattr(self, name)}")
        require(self.batch_size >= 1, "batch_size must be positive")
        require(self.patience >= 1, "patience must be positive")
        require(self.learning_rate > 0, "learning_rate must be positive")
        require(self.weight_decay >= 0, "weight_decay must be non-negative")
        require(0 < self.train_fraction < 1, f"train_fraction must lie in (0, 1), got {self.train_fraction}")
        require(0 <= self.validation_fraction < 1, "validation_fraction must lie in [0, 1)")

    @property
    def feature_width(self) -> int:
        """Columns of one FeatureMatrix: state, time and (optionally) the positional block"""
        return 2 + (self.pe_width if self.positional_encoding else 0)

    def with_seed(self, seed: int) -> "ModelConfig":
        return evolve(self, seed=seed)

    def fingerprint(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def to_dict(self) -> Dict[str, Any]:
        field_dict: Dict[str, Any] = {}
        field_dict.update(
            {
                "hgnn_width": self.hgnn_width,
                "pe_width": self.pe_width,
                "n_blocks": self.n_blocks,
                "d_state": self.d_state,
                "channels": self.channels,
                "edge_hidden": self.edge_hidden,
                "activation": self.activation.value,
                "selective": self.selective,
                "selection": self.selection.value,
                "graph_coupling": self.graph_coupling,
                "edge_weights": self.edge_weights,
                "positional_encoding": self.positional_encoding,
                "single_snapshot": self.single_snapshot,
                "sequence": self.sequence.value,
                "learning_rate": self.learning_rate,
                "weight_decay": self.weight_decay,
                "epochs": self.epochs,
                "batch_size": self.batch_size,
                "patience": self.patience,
                "train_fraction": self.train_fraction,
                "validation_fraction": self.validation_fraction,
                "seed": self.seed,
            }
        )

        return field_dict

    @classmethod
    def from_dict(cls: Type[T], src_dict: Dict[str, Any]) -> T:
        d = src_dict.copy()
        defaults = cls().to_dict()
        values = {key: d.pop(key, default) for key, default in defaults.items()}
        reject_unknown("model", d)

        model_config = cls(**values)

        return model_config
