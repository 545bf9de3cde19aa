"""Conventional sequence layers that can stand in for the graph-aware scan"""

import math
from functools import reduce
from operator import add
from typing import List, Optional, Sequence

import numpy as np

from ..autodiff import Tensor
from ..autodiff import ops as F
from ..errors import ContractError, ShapeError
from .layers import Linear
from .module import Module


def _check_sequence(name: str, xs: Sequence[Tensor], channels: int) -> int:
    if not xs:
        raise ContractError(f"{name} needs a non-empty sequence")
    n = xs[0].shape[0]
    for x in xs:
        if x.ndim != 2 or x.shape != (n, channels):
            raise ShapeError(name, x.shape, (n, channels))
    return n


class TemporalAttention(Module):
    """Single-head scaled dot-product attention across snapshots, computed separately per node.

    Every position attends to every snapshot of the same node; nodes never exchange information.
    """

    def __init__(self, channels: int, rng: np.random.Generator):
        self.channels = channels
        self.query = Linear(channels, channels, rng, bias=False)
        self.key = Linear(channels, channels, rng, bias=False)
        self.value = Linear(channels, channels, rng, bias=False)
        self.output = Linear(channels, channels, rng)

    def forward(self, xs: Sequence[Tensor]) -> List[Tensor]:
        n = _check_sequence("temporal_attention", xs, self.channels)
        c = self.channels
        keys = [self.key(x) for x in xs]
        values = [self.value(x) for x in xs]

        ys: List[Tensor] = []
        for x in xs:
            query = self.query(x)
            scores = [F.scale(F.tensor_sum(query * k, axis=1), 1.0 / math.sqrt(c)) for k in keys]
            # softmax over snapshots as exp(s - logsumexp(s)), shifted by the constant row maximum
            top = Tensor(np.max([s.data for s in scores], axis=0))
            shifted = [s - top for s in scores]
            log_norm = F.log(reduce(add, [F.exp(s) for s in shifted]))
            mixed = reduce(
                add,
                [
                    F.broadcast_to(F.reshape(F.exp(s - log_norm), (n, 1)), (n, c)) * v
                    for s, v in zip(shifted, values)
                ],
            )
            ys.append(self.output(mixed))
        return ys


class LSTMBlock(Module):
    """Per-node LSTM over the snapshot sequence with hidden width equal to the channel count"""

    def __init__(self, channels: int, rng: np.random.Generator):
        self.channels = channels
        self.w_input = Linear(channels, channels, rng)
        self.w_forget = Linear(channels, channels, rng)
        self.w_cell = Linear(channels, channels, rng)
        self.w_output = Linear(channels, channels, rng)
        self.u_input = Linear(channels, channels, rng, bias=False)
        self.u_forget = Linear(channels, channels, rng, bias=False)
        self.u_cell = Linear(channels, channels, rng, bias=False)
        self.u_output = Linear(channels, channels, rng, bias=False)
        self.w_forget.bias.data = np.ones(channels)

    @staticmethod
    def _gate(w: Linear, u: Linear, x: Tensor, h: Optional[Tensor]) -> Tensor:
        pre = w(x)
        return pre if h is None else pre + u(h)

    def forward(self, xs: Sequence[Tensor]) -> List[Tensor]:
        """Hidden states ``h_t`` for every step, starting from zero hidden and cell states"""
        _check_sequence("lstm", xs, self.channels)
        h: Optional[Tensor] = None
        cell: Optional[Tensor] = None
        ys: List[Tensor] = []
        for x in xs:
            i = F.sigmoid(self._gate(self.w_input, self.u_input, x, h))
            g = F.tanh(self._gate(self.w_cell, self.u_cell, x, h))
            o = F.sigmoid(self._gate(self.w_output, self.u_output, x, h))
            if cell is None:
                cell = i * g
            else:
                f = F.sigmoid(self._gate(self.w_forget, self.u_forget, x, h))
                cell = f * cell + i * g
            h = o * F.tanh(cell)
            ys.append(h)
        return ys


__all__ = ["LSTMBlock", "TemporalAttention"]
