from typing import Any, Dict, Iterable, Tuple

import numpy as np

from ..errors import ConfigError


def reject_unknown(kind: str, leftover: Dict[str, Any]) -> None:
    """Raise if ``from_dict`` left keys unconsumed"""
    if leftover:
        raise ConfigError(f"Unknown {kind} keys: {sorted(leftover)}")


def float_tuple(values: Iterable[Any]) -> Tuple[float, ...]:
    return tuple(float(v) for v in values)


def require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


def enum_value(enum_cls: Any, value: Any) -> Any:
    try:
        return enum_cls(value)
    except ValueError:
        choices = [member.value for member in enum_cls]
        raise ConfigError(f"{value!r} is not one of {choices}") from None


def strict_bool(value: Any) -> bool:
    """Accept only real booleans; ``bool("false")`` would silently be True"""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    raise ConfigError(f"expected true or false, got {value!r}")
