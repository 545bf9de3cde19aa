"""The end-to-end source detector"""

import logging
from typing import Any, List, Mapping, Sequence, Union

import numpy as np

from ..autodiff import Tensor, load_checkpoint, no_grad, save_checkpoint
from ..autodiff import ops as F
from ..errors import ContractError, DataError
from ..hypergraph import GraphOperators
from ..models import ModelConfig, SequenceModel
from ..nn import HGNNLayer, Linear, LSTMBlock, Module, TemporalAttention, hgnn_forward
from ..seeding import rng_for
from ..ssm import SSMBlock, graph_scan
from ..types import FloatArray

logger = logging.getLogger(__name__)

FeatureInput = Union[Tensor, FloatArray]


def _sequence_layers(config: ModelConfig, rng: np.random.Generator) -> List[Module]:
    """``n_blocks`` residual layers; the attention-then-LSTM stack spends two layers per block"""
    layers: List[Module] = []
    for _ in range(config.n_blocks):
        if config.sequence is SequenceModel.SSM:
            layers.append(
                SSMBlock(
                    config.channels,
                    config.d_state,
                    config.edge_hidden,
                    config.activation,
                    rng,
                    selective=config.selective,
                    selection=config.selection,
                    graph_coupling=config.graph_coupling,
                    edge_weights=config.edge_weights,
                )
            )
        if config.sequence in (SequenceModel.ATTENTION, SequenceModel.ATTENTION_LSTM):
            layers.append(TemporalAttention(config.channels, rng))
        if config.sequence in (SequenceModel.LSTM, SequenceModel.ATTENTION_LSTM):
            layers.append(LSTMBlock(config.channels, rng))
    return layers


class SourceDetMamba(Module):
    """HGNN fusion per snapshot, a residual stack of sequence layers (graph-aware SSM blocks unless
    ``config.sequence`` says otherwise) over the reversed sequence, and a sigmoid readout of the
    final element.
    """

    def __init__(self, config: ModelConfig):
        if config.seed is None:
            raise ContractError("model config needs a resolved seed")
        rng = rng_for(config.seed, "init")
        self.config = config
        self.hgnn = HGNNLayer(config.feature_width, config.hgnn_width, config.activation, rng)
        self.project = Linear(config.hgnn_width, config.channels, rng)
        self.blocks = _sequence_layers(config, rng)
        self.readout = Linear(config.channels, 1, rng)

    def forward(self, features: Sequence[FeatureInput], operators: GraphOperators) -> Tensor:
        """Source scores in (0, 1), one per node, for snapshots given earliest first"""
        if not features:
            raise ContractError("forward needs at least one snapshot")
        xs = [f if isinstance(f, Tensor) else Tensor(f) for f in features]
        if self.config.single_snapshot:
            xs = xs[:1]

        sequence = [self.project(hgnn_forward(self.hgnn, x, operators.hgnn_propagation)) for x in reversed(xs)]
        for block in self.blocks:
            ys = graph_scan(block, sequence, operators) if isinstance(block, SSMBlock) else block(sequence)
            sequence = [x + y for x, y in zip(sequence, ys)]

        logits = self.readout(sequence[-1])
        return F.sigmoid(F.reshape(logits, (logits.shape[0],)))

    def predict(self, features: Sequence[FeatureInput], operators: GraphOperators) -> FloatArray:
        with no_grad():
            return self.forward(features, operators).data.copy()

    def l2_norm(self) -> float:
        return float(np.sqrt(sum(np.sum(p.data * p.data) for p in self.parameters())))

    def save(self, path: Any) -> None:
        save_checkpoint(path, self.config.to_dict(), self.state_dict())

    @classmethod
    def from_state(cls, model_config: Mapping[str, Any], parameters: Mapping[str, FloatArray]) -> "SourceDetMamba":
        """Rebuild a model from stored config and weights.

        Raises:
            ContractError: the weights do not fit the architecture the config describes.
        """
        model = cls(ModelConfig.from_dict(dict(model_config)))
        try:
            model.load_state_dict(parameters)
        except DataError as exc:
            raise ContractError(f"checkpoint does not match its model config: {exc}") from exc
        return model

    @classmethod
    def load(cls, path: Any) -> "SourceDetMamba":
        model_config, parameters = load_checkpoint(path)
        logger.debug("loaded %d parameter arrays from %s", len(parameters), path)
        return cls.from_state(model_config, parameters)


__all__ = ["SourceDetMamba"]
