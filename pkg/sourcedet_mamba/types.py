"""Contains some shared types for properties"""

from enum import Enum, IntEnum
from pathlib import Path
from typing import Generic, List, Literal, TypeVar

import numpy as np
import numpy.typing as npt
from attrs import define, field


class Unset:
    def __bool__(self) -> Literal[False]:
        return False

    def __repr__(self) -> str:
        return "UNSET"


UNSET: Unset = Unset()

FloatArray = npt.NDArray[np.float64]
IntArray = npt.NDArray[np.int64]


class NodeState(IntEnum):
    """Per-node state inside a snapshot"""

    UNINFORMED = 0
    INFORMED = 1
    RECOVERED = 2


class DiffusionModel(str, Enum):
    """Supported propagation dynamics"""

    IC = "IC"
    SI = "SI"
    SIS = "SIS"
    SIR = "SIR"


T = TypeVar("T")


@define
class Outcome(Generic[T]):
    """What a command produced"""

    out_dir: Path
    parsed: T
    artifacts: List[Path] = field(factory=list)


# Infection-time sentinel for nodes that never informed the rumour
NEVER: int = -1


__all__ = ["DiffusionModel", "FloatArray", "IntArray", "NEVER", "NodeState", "Outcome", "Unset", "UNSET"]
