"""Reverse-mode automatic differentiation over numpy arrays"""

from . import tensor as ops
from .checkpoint import CHECKPOINT_FORMAT, checkpoint_dict, load_checkpoint, parse_checkpoint, save_checkpoint
from .gradcheck import GradcheckResult, gradcheck
from .tensor import Parameter, Tensor, no_grad

__all__ = (
    "CHECKPOINT_FORMAT",
    "GradcheckResult",
    "Parameter",
    "Tensor",
    "checkpoint_dict",
    "gradcheck",
    "load_checkpoint",
    "no_grad",
    "ops",
    "parse_checkpoint",
    "save_checkpoint",
)
