from typing import Any, Dict, Iterator, List, Mapping, Tuple

import numpy as np

from ..autodiff import Parameter, Tensor
from ..errors import DataError
from ..types import FloatArray


class Module:
    """Container of parameters and sub-modules.

    Parameters are discovered from instance attributes in assignment order: a ``Parameter`` is
    named after its attribute, sub-modules and lists of sub-modules contribute dotted names.
    """

    def forward(self, *args: Any, **kwargs: Any) -> Tensor:
        raise NotImplementedError

    def __call__(self, *args: Any, **kwargs: Any) -> Tensor:
        return self.forward(*args, **kwargs)

    def named_parameters(self, prefix: str = "") -> Iterator[Tuple[str, Parameter]]:
        for attr, value in vars(self).items():
            name = f"{prefix}{attr}"
            if isinstance(value, Parameter):
                yield name, value
            elif isinstance(value, Module):
                yield from value.named_parameters(f"{name}.")
            elif isinstance(value, (list, tuple)):
                for i, item in enumerate(value):
                    if isinstance(item, Module):
                        yield from item.named_parameters(f"{name}.{i}.")

    def parameters(self) -> List[Parameter]:
        return [p for _, p in self.named_parameters()]

    def zero_grad(self) -> None:
        for p in self.parameters():
            p.zero_grad()

    def state_dict(self) -> Dict[str, FloatArray]:
        return {name: p.data.copy() for name, p in self.named_parameters()}

    def load_state_dict(self, state: Mapping[str, FloatArray]) -> None:
        """Copy ``state`` into the parameters; names and shapes must match exactly.

        Raises:
            DataError: a name is missing or unexpected, or a shape differs.
        """
        own = dict(self.named_parameters())
        missing = sorted(set(own) - set(state))
        unexpected = sorted(set(state) - set(own))
        if missing or unexpected:
            raise DataError(f"state mismatch: missing {missing}, unexpected {unexpected}")
        for name, p in own.items():
            values = np.asarray(state[name], dtype=np.float64)
            if values.shape != p.shape:
                raise DataError(f"parameter {name!r}: expected shape {p.shape}, got {values.shape}")
            p.data = values.copy()

    def n_parameters(self) -> int:
        return sum(p.data.size for p in self.parameters())
