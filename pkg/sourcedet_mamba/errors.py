"""Contains shared error types raised across the package"""

from typing import Optional, Sequence


class SourceDetError(Exception):
    """Base class for every error raised deliberately by sourcedet_mamba"""


class ValidationError(SourceDetError):
    """Raised when user-supplied data violates a documented invariant"""


class ParseError(ValidationError):
    """Raised when a file cannot be parsed

    Attributes:
        path: the file being parsed.
        line_number: 1-based line of the offending token, if known.
        token: the offending token, if known.
    """

    def __init__(self, path: str, reason: str, line_number: Optional[int] = None, token: Optional[str] = None):
        self.path = path
        self.reason = reason
        self.line_number = line_number
        self.token = token

        location = f"{path}:{line_number}" if line_number is not None else path
        detail = f" (token {token!r})" if token is not None else ""
        super().__init__(f"Cannot parse {location}: {reason}{detail}")


class ContractError(SourceDetError):
    """Raised when a caller breaks an API contract (shapes, signs, modes)"""


class ShapeError(ContractError):
    """Raised when operand shapes are incompatible"""

    def __init__(self, op: str, left: Sequence[int], right: Sequence[int]):
        self.op = op
        self.left = tuple(left)
        self.right = tuple(right)

        super().__init__(f"{op}: incompatible shapes {self.left} and {self.right}")


class NumericError(SourceDetError):
    """Raised when a tensor operation produces NaN or Inf"""

    def __init__(self, op: str, shape: Sequence[int]):
        self.op = op
        self.shape = tuple(shape)

        super().__init__(f"Non-finite values produced by {op} (output shape {self.shape})")


class SimulationError(SourceDetError):
    """Raised when a cascade cannot reach its coverage targets within the retry budget"""

    def __init__(self, target: float, attempts: int, cascade_index: Optional[int] = None):
        self.target = target
        self.attempts = attempts
        self.cascade_index = cascade_index

        where = f" for cascade {cascade_index}" if cascade_index is not None else ""
        super().__init__(f"Coverage target {target:g} not reached after {attempts} attempts{where}")


class DataError(SourceDetError):
    """Raised when a dataset or snapshot is internally inconsistent"""


class TrainingError(SourceDetError):
    """Raised when optimisation diverges"""

    def __init__(self, epoch: int, batch: int, last_finite_loss: Optional[float]):
        self.epoch = epoch
        self.batch = batch
        self.last_finite_loss = last_finite_loss

        super().__init__(
            f"Non-finite loss at epoch {epoch}, batch {batch} (last finite loss: {last_finite_loss})"
        )


class ConfigError(ValidationError):
    """Raised for unknown keys or invalid values in a configuration"""


class ArtifactError(SourceDetError):
    """Raised when a write-once artifact already exists"""

    def __init__(self, path: str):
        self.path = path

        super().__init__(f"Refusing to overwrite existing artifact {path}")


__all__ = [
    "ArtifactError",
    "ConfigError",
    "ContractError",
    "DataError",
    "NumericError",
    "ParseError",
    "ShapeError",
    "SimulationError",
    "SourceDetError",
    "TrainingError",
    "ValidationError",
]
