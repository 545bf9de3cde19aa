"""Finite-difference verification of reverse-mode gradients"""

from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from attrs import define

from ..errors import ContractError
from ..types import FloatArray
from .tensor import Tensor, no_grad


@define(frozen=True)
class GradcheckResult:
    """
    Attributes:
        passed (bool): every coordinate agreed within tolerance.
        max_rel_error (float): worst relative disagreement among coordinates beyond ``atol``.
        worst (Optional[Tuple[int, Tuple[int, ...]]]): (input position, index) of that coordinate.
    """

    passed: bool
    max_rel_error: float
    worst: Optional[Tuple[int, Tuple[int, ...]]] = None


def _analytic(f: Callable[..., Tensor], inputs: Sequence[Tensor]) -> List[FloatArray]:
    for x in inputs:
        x.zero_grad()
    out = f(*inputs)
    if out.shape != ():
        raise ContractError(f"gradcheck needs a scalar function, got shape {out.shape}")
    if out.requires_grad:
        out.backward()
    return [np.zeros_like(x.data) if x.grad is None else x.grad.copy() for x in inputs]


def gradcheck(
    f: Callable[..., Tensor],
    inputs: Sequence[Tensor],
    h: float = 1e-5,
    tol: float = 1e-4,
    atol: float = 1e-8,
    analytic: Optional[Sequence[FloatArray]] = None,
) -> GradcheckResult:
    """Compare reverse-mode gradients of scalar ``f`` with central differences.

    A coordinate passes when ``|a - b| <= atol`` or ``|a - b| / max(|a|, |b|, 1e-8) <= tol``.
    ``analytic`` replaces the reverse-mode gradients, which lets callers check a hand-derived one.
    """
    for x in inputs:
        if not x.requires_grad:
            raise ContractError("gradcheck inputs must require gradients")
    grads = list(analytic) if analytic is not None else _analytic(f, inputs)

    passed = True
    max_rel = 0.0
    worst: Optional[Tuple[int, Tuple[int, ...]]] = None
    with no_grad():
        for position, x in enumerate(inputs):
            for index in np.ndindex(*x.shape):
                original = x.data[index]
                x.data[index] = original + h
                upper = f(*inputs).item()
                x.data[index] = original - h
                lower = f(*inputs).item()
                x.data[index] = original

                numeric = (upper - lower) / (2.0 * h)
                reverse = float(grads[position][index])
                diff = abs(numeric - reverse)
                if diff <= atol:
                    continue
                rel = diff / max(abs(numeric), abs(reverse), 1e-8)
                if rel > max_rel:
                    max_rel, worst = rel, (position, tuple(int(i) for i in index))
                if rel > tol:
                    passed = False

    return GradcheckResult(passed=passed, max_rel_error=max_rel, worst=worst)


__all__ = ["GradcheckResult", "gradcheck"]
