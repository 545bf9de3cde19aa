"""Rumour source detection on sequential hypergraph snapshots with a graph-aware selective state space model"""

from .models import ModelConfig, RunConfig
from .runner import Runner, load_config
from .training import SourceDetMamba

__version__ = "0.1.0"

__all__ = (
    "ModelConfig",
    "RunConfig",
    "Runner",
    "SourceDetMamba",
    "load_config",
)
