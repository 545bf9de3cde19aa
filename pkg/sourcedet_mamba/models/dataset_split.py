from typing import Any, Dict, Tuple, Type, TypeVar

from attrs import define as _attrs_define
from attrs import field

from ..errors import DataError

T = TypeVar("T", bound="DatasetSplit")


def _sorted_ids(values: Any) -> Tuple[int, ...]:
    return tuple(sorted(int(v) for v in values))


@_attrs_define(frozen=True)
class DatasetSplit:
    """Cascade-level partition of a dataset.

    Attributes:
        train (Tuple[int, ...]): cascade ids used for gradient steps.
        validation (Tuple[int, ...]): ids held out of ``train`` for early stopping.
        test (Tuple[int, ...]): ids reserved for evaluation.
        seed (int): seed the permutation was drawn with.
    """

    train: Tuple[int, ...] = field(converter=_sorted_ids)
    validation: Tuple[int, ...] = field(converter=_sorted_ids)
    test: Tuple[int, ...] = field(converter=_sorted_ids)
    seed: int = field(converter=int)

    def __attrs_post_init__(self) -> None:
        parts = (set(self.train), set(self.validation), set(self.test))
        if sum(len(p) for p in parts) != len(parts[0] | parts[1] | parts[2]):
            raise DataError("train, validation and test ids overlap")

    @property
    def all_ids(self) -> Tuple[int, ...]:
        return tuple(sorted(self.train + self.validation + self.test))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "train": list(self.train),
            "validation": list(self.validation),
            "test": list(self.test),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls: Type[T], src_dict: Dict[str, Any]) -> T:
        d = src_dict.copy()

        dataset_split = cls(
            train=d.pop("train"),
            validation=d.pop("validation", []),
            test=d.pop("test"),
            seed=d.pop("seed"),
        )

        return dataset_split
