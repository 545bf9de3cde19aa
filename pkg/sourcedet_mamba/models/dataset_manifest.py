from typing import Any, Dict, List, Type, TypeVar

from attrs import define as _attrs_define
from attrs import field

from ..errors import DataError

DATASET_FORMAT = "sdm-dataset-v1"

E = TypeVar("E", bound="CascadeEntry")
T = TypeVar("T", bound="DatasetManifest")


@_attrs_define(frozen=True)
class CascadeEntry:
    """
    Attributes:
        id (int): cascade id, also its position in manifest order.
        file (str): snapshot file relative to the dataset directory.
        seed (int): seed of the attempt that produced the cascade.
    """

    id: int
    file: str
    seed: int

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.id, "file": self.file, "seed": self.seed}

    @classmethod
    def from_dict(cls: Type[E], src_dict: Dict[str, Any]) -> E:
        d = src_dict.copy()
        return cls(id=int(d.pop("id")), file=str(d.pop("file")), seed=int(d.pop("seed")))


@_attrs_define(frozen=True)
class DatasetManifest:
    """Index of a generated dataset directory.

    Attributes:
        hypergraph (str): hypergraph text file relative to the dataset directory.
        n_nodes (int): node count of the hypergraph.
        cascades (List[CascadeEntry]): snapshot files in generation order.
        config (Dict[str, Any]): resolved run configuration that produced the dataset.
    """

    hypergraph: str
    n_nodes: int
    cascades: List[CascadeEntry] = field(factory=list)
    config: Dict[str, Any] = field(factory=dict)

    @property
    def ids(self) -> List[int]:
        return [entry.id for entry in self.cascades]

    def to_dict(self) -> Dict[str, Any]:
        field_dict: Dict[str, Any] = {"format": DATASET_FORMAT}
        field_dict.update(
            {
                "hypergraph": self.hypergraph,
                "n_nodes": self.n_nodes,
                "cascades": [entry.to_dict() for entry in self.cascades],
                "config": self.config,
            }
        )

        return field_dict

    @classmethod
    def from_dict(cls: Type[T], src_dict: Dict[str, Any]) -> T:
        d = src_dict.copy()
        fmt = d.pop("format", None)
        if fmt != DATASET_FORMAT:
            raise DataError(f"expected format {DATASET_FORMAT!r}, got {fmt!r}")

        cascades = [CascadeEntry.from_dict(entry) for entry in d.pop("cascades")]

        dataset_manifest = cls(
            hypergraph=d.pop("hypergraph"),
            n_nodes=int(d.pop("n_nodes")),
            cascades=cascades,
            config=d.pop("config", {}),
        )

        return dataset_manifest
