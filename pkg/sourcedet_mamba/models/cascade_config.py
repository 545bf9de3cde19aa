from typing import Any, Dict, Optional, Tuple, Type, TypeVar

from attrs import define as _attrs_define
from attrs import field

from ..types import DiffusionModel
from ._fields import enum_value, float_tuple, reject_unknown, require

T = TypeVar("T", bound="CascadeConfig")


@_attrs_define(frozen=True)
class CascadeConfig:
    """Propagation settings for one dataset of cascades.

    Attributes:
        model (DiffusionModel): propagation dynamics. Default: IC.
        source_fraction (float): share of nodes seeded as sources. Default: 0.05.
        p_low_range (Tuple[float, float]): bounds of the per-node uniform transmission rate. Default: (0, 0.5).
        high_order_coefficient (float): scale of the within-hyperedge transition probability. Default: 0.3.
        recovery_probability (float): per-round recovery chance (SIS/SIR only). Default: 0.1.
        seed (Optional[int]): root of the cascade streams; derived from the run seed when None.
        coverage_targets (Tuple[float, ...]): informed fractions that trigger captures. Default: (0.1, 0.2, 0.3).
        max_steps (int): rounds before a cascade counts as stalled. Default: 100.
        max_attempts (int): reseeded attempts before giving up on a cascade. Default: 50.
    """

    model: DiffusionModel = field(default=DiffusionModel.IC, converter=lambda v: enum_value(DiffusionModel, v))
    source_fraction: float = field(default=0.05, converter=float)
    p_low_range: Tuple[float, float] = field(default=(0.0, 0.5), converter=float_tuple)
    high_order_coefficient: float = field(default=0.3, converter=float)
    recovery_probability: float = field(default=0.1, converter=float)
    seed: Optional[int] = None
    coverage_targets: Tuple[float, ...] = field(default=(0.1, 0.2, 0.3), converter=float_tuple)
    max_steps: int = field(default=100, converter=int)
    max_attempts: int = field(default=50, converter=int)

    def __attrs_post_init__(self) -> None:
        targets = self.coverage_targets
        require(len(targets) >= 1, "coverage_targets must not be empty")
        require(all(0 < t <= 1 for t in targets), f"coverage_targets must lie in (0, 1], got {targets}")
        require(all(a < b for a, b in zip(targets, targets[1:])), f"coverage_targets must ascend, got {targets}")
        require(
            0 < self.source_fraction < min(targets),
            f"source_fraction must lie in (0, {min(targets)}), got {self.source_fraction}",
        )
        require(len(self.p_low_range) == 2, f"p_low_range needs two bounds, got {self.p_low_range}")
        lo, hi = self.p_low_range
        require(0 <= lo <= hi <= 1, f"p_low_range must satisfy 0 <= lo <= hi <= 1, got {self.p_low_range}")
        require(self.high_order_coefficient >= 0, "high_order_coefficient must be non-negative")
        require(0 <= self.recovery_probability <= 1, "recovery_probability must lie in [0, 1]")
        require(self.max_steps >= 1, "max_steps must be positive")
        require(self.max_attempts >= 1, "max_attempts must be positive")

    def to_dict(self) -> Dict[str, Any]:
        field_dict: Dict[str, Any] = {}
        field_dict.update(
            {
                "model": self.model.value,
                "source_fraction": self.source_fraction,
                "p_low_range": list(self.p_low_range),
                "high_order_coefficient": self.high_order_coefficient,
                "recovery_probability": self.recovery_probability,
                "seed": self.seed,
                "coverage_targets": list(self.coverage_targets),
                "max_steps": self.max_steps,
                "max_attempts": self.max_attempts,
            }
        )

        return field_dict

    @classmethod
    def from_dict(cls: Type[T], src_dict: Dict[str, Any]) -> T:
        d = src_dict.copy()
        defaults = cls()
        cascade_config = cls(
            model=d.pop("model", defaults.model),
            source_fraction=d.pop("source_fraction", defaults.source_fraction),
            p_low_range=d.pop("p_low_range", defaults.p_low_range),
            high_order_coefficient=d.pop("high_order_coefficient", defaults.high_order_coefficient),
            recovery_probability=d.pop("recovery_probability", defaults.recovery_probability),
            seed=d.pop("seed", defaults.seed),
            coverage_targets=d.pop("coverage_targets", defaults.coverage_targets),
            max_steps=d.pop("max_steps", defaults.max_steps),
            max_attempts=d.pop("max_attempts", defaults.max_attempts),
        )
        reject_unknown("cascade", d)

        return cascade_config
