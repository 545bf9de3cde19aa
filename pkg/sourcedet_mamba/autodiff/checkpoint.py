"""JSON checkpoints of named parameter arrays"""

import logging
from typing import Any, Dict, Mapping, Tuple

import numpy as np

from ..artifacts import PathLike, read_json, write_json
from ..errors import DataError
from ..types import FloatArray

logger = logging.getLogger(__name__)

CHECKPOINT_FORMAT = "sdm-ckpt-v1"


def checkpoint_dict(model_config: Mapping[str, Any], parameters: Mapping[str, FloatArray]) -> Dict[str, Any]:
    # json writes floats with repr, which round-trips float64 exactly
    return {
        "format": CHECKPOINT_FORMAT,
        "model_config": dict(model_config),
        "parameters": {
            name: {"shape": list(values.shape), "data": [float(v) for v in np.ravel(values)]}
            for name, values in parameters.items()
        },
    }


def save_checkpoint(path: PathLike, model_config: Mapping[str, Any], parameters: Mapping[str, FloatArray]) -> None:
    write_json(path, checkpoint_dict(model_config, parameters))
    logger.info("saved %d parameter arrays to %s", len(parameters), path)


def parse_checkpoint(payload: Mapping[str, Any]) -> Tuple[Dict[str, Any], Dict[str, FloatArray]]:
    fmt = payload.get("format")
    if fmt != CHECKPOINT_FORMAT:
        raise DataError(f"expected format {CHECKPOINT_FORMAT!r}, got {fmt!r}")
    parameters: Dict[str, FloatArray] = {}
    for name, entry in payload.get("parameters", {}).items():
        shape = tuple(int(s) for s in entry["shape"])
        data = np.asarray(entry["data"], dtype=np.float64)
        if data.size != int(np.prod(shape, dtype=np.int64)):
            raise DataError(f"parameter {name!r}: {data.size} values do not fill shape {shape}")
        parameters[name] = data.reshape(shape)
    return dict(payload.get("model_config", {})), parameters


def load_checkpoint(path: PathLike) -> Tuple[Dict[str, Any], Dict[str, FloatArray]]:
    """Return ``(model_config, parameters)`` stored at ``path``"""
    return parse_checkpoint(read_json(path))


__all__ = ["CHECKPOINT_FORMAT", "checkpoint_dict", "load_checkpoint", "parse_checkpoint", "save_checkpoint"]
