"""Dense float64 tensors with reverse-mode differentiation.

Every operation returns a new :class:`Tensor` that remembers its parents and a closure mapping the
output gradient to one gradient per parent. :meth:`Tensor.backward` walks the recorded graph in
reverse topological order, accumulates gradients into leaves and then releases the graph.
"""

import threading
from contextlib import contextmanager
from typing import Any, Callable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp
from scipy.special import expit
from scipy.special import exprel as _exprel

from ..errors import ContractError, NumericError, ShapeError
from ..types import FloatArray

Shape = Tuple[int, ...]
BackwardFn = Callable[[FloatArray], Sequence[Optional[FloatArray]]]
Operand = Union["Tensor", float, int]

_state = threading.local()


def is_grad_enabled() -> bool:
    return getattr(_state, "enabled", True)


@contextmanager
def no_grad() -> Iterator[None]:
    """Disable graph recording inside the block"""
    previous = is_grad_enabled()
    _state.enabled = False
    try:
        yield
    finally:
        _state.enabled = previous


class Tensor:
    """n-dimensional float64 array that records the operations producing it.

    Attributes:
        data: the values.
        requires_grad: whether gradients flow into this tensor.
        grad: accumulated gradient of the last ``backward`` call, ``None`` before one.
        op: tag of the producing operation, ``"leaf"`` for inputs.
    """

    __array_priority__ = 100.0

    def __init__(self, data: Any, requires_grad: bool = False, op: str = "leaf"):
        self.data: FloatArray = np.array(data, dtype=np.float64)
        self.requires_grad = requires_grad
        self.grad: Optional[FloatArray] = None
        self.op = op
        self._parents: Tuple["Tensor", ...] = ()
        self._backward: Optional[BackwardFn] = None
        self._consumed = False

    @property
    def shape(self) -> Shape:
        return tuple(self.data.shape)

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def T(self) -> "Tensor":
        return transpose(self)

    def item(self) -> float:
        return float(self.data)

    def numpy(self) -> FloatArray:
        return self.data

    def detach(self) -> "Tensor":
        return Tensor(self.data.copy())

    def zero_grad(self) -> None:
        self.grad = None

    def __repr__(self) -> str:
        return f"Tensor(shape={self.shape}, op={self.op!r}, requires_grad={self.requires_grad})"

    def __add__(self, other: Operand) -> "Tensor":
        return add(self, other)

    def __radd__(self, other: Operand) -> "Tensor":
        return add(other, self)

    def __sub__(self, other: Operand) -> "Tensor":
        return sub(self, other)

    def __rsub__(self, other: Operand) -> "Tensor":
        return sub(other, self)

    def __neg__(self) -> "Tensor":
        return neg(self)

    def __mul__(self, other: Operand) -> "Tensor":
        return mul(self, other)

    def __rmul__(self, other: Operand) -> "Tensor":
        return mul(other, self)

    def __truediv__(self, other: float) -> "Tensor":
        if isinstance(other, Tensor):
            raise ContractError("division is only defined by a constant scalar")
        return scale(self, 1.0 / other)

    def __matmul__(self, other: "Tensor") -> "Tensor":
        return matmul(self, other)

    def sum(self, axis: Optional[int] = None) -> "Tensor":
        return tensor_sum(self, axis)

    def mean(self, axis: Optional[int] = None) -> "Tensor":
        return mean(self, axis)

    def reshape(self, *shape: int) -> "Tensor":
        return reshape(self, shape)

    def backward(self) -> None:
        """Accumulate ``∂self/∂leaf`` into every leaf that requires a gradient.

        Raises:
            ContractError: ``self`` is not a scalar, does not depend on any gradient-requiring leaf,
                or its graph was already consumed by an earlier call.
        """
        if self.shape != ():
            raise ContractError(f"backward needs a scalar loss, got shape {self.shape}")
        if self._consumed:
            raise ContractError("graph already consumed by a previous backward call")
        if not self.requires_grad:
            raise ContractError("loss does not depend on any tensor that requires a gradient")

        order = _topological_order(self)
        pending = {id(self): np.ones(())}
        for node in reversed(order):
            grad = pending.pop(id(node), None)
            if grad is None:
                continue
            if node._backward is None:
                node.grad = grad.copy() if node.grad is None else node.grad + grad
                continue
            for parent, parent_grad in zip(node._parents, node._backward(grad)):
                if parent_grad is None or not parent.requires_grad:
                    continue
                key = id(parent)
                pending[key] = parent_grad if key not in pending else pending[key] + parent_grad

        for node in order:
            if node._backward is not None:
                node._parents = ()
                node._backward = None
                node._consumed = True


class Parameter(Tensor):
    """Trainable leaf tensor"""

    def __init__(self, data: Any, name: str = ""):
        super().__init__(data, requires_grad=True, op="param")
        self.name = name

    def __repr__(self) -> str:
        return f"Parameter(name={self.name!r}, shape={self.shape})"


def _topological_order(root: Tensor) -> List[Tensor]:
    order: List[Tensor] = []
    visited = set()
    stack: List[Tuple[Tensor, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in visited:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for parent in node._parents:
            if id(parent) not in visited:
                stack.append((parent, False))
    return order


def as_tensor(value: Operand) -> Tensor:
    return value if isinstance(value, Tensor) else Tensor(value)


def _make(data: FloatArray, parents: Sequence[Tensor], op: str, backward: BackwardFn) -> Tensor:
    data = np.asarray(data, dtype=np.float64)
    if not np.all(np.isfinite(data)):
        raise NumericError(op, data.shape)
    out = Tensor(data, op=op)
    if is_grad_enabled() and any(p.requires_grad for p in parents):
        out.requires_grad = True
        out._parents = tuple(parents)
        out._backward = backward
    return out


def _unbroadcast(grad: FloatArray, shape: Shape) -> FloatArray:
    """Sum ``grad`` down to ``shape`` after numpy broadcasting"""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _check_elementwise(op: str, a: Tensor, b: Tensor, allow_bias: bool) -> None:
    if a.shape == b.shape or a.shape == () or b.shape == ():
        return
    if allow_bias:
        if a.ndim == 2 and b.ndim == 1 and a.shape[1] == b.shape[0]:
            return
        if b.ndim == 2 and a.ndim == 1 and b.shape[1] == a.shape[0]:
            return
    raise ShapeError(op, a.shape, b.shape)


def add(a: Operand, b: Operand) -> Tensor:
    """Elementwise sum; also scalar + tensor and row-vector bias + (n, k) matrix"""
    a, b = as_tensor(a), as_tensor(b)
    _check_elementwise("add", a, b, allow_bias=True)
    return _make(
        a.data + b.data,
        (a, b),
        "add",
        lambda g: (_unbroadcast(g, a.shape), _unbroadcast(g, b.shape)),
    )


def sub(a: Operand, b: Operand) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _check_elementwise("sub", a, b, allow_bias=True)
    return _make(
        a.data - b.data,
        (a, b),
        "sub",
        lambda g: (_unbroadcast(g, a.shape), -_unbroadcast(g, b.shape)),
    )


def neg(a: Tensor) -> Tensor:
    return _make(-a.data, (a,), "neg", lambda g: (-g,))


def mul(a: Operand, b: Operand) -> Tensor:
    """Elementwise (Hadamard) product of equal shapes, or scalar times tensor"""
    a, b = as_tensor(a), as_tensor(b)
    _check_elementwise("mul", a, b, allow_bias=False)
    return _make(
        a.data * b.data,
        (a, b),
        "mul",
        lambda g: (_unbroadcast(g * b.data, a.shape), _unbroadcast(g * a.data, b.shape)),
    )


def scale(a: Tensor, factor: float) -> Tensor:
    factor = float(factor)
    return _make(a.data * factor, (a,), "scale", lambda g: (g * factor,))


def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeError("matmul", a.shape, b.shape)
    return _make(a.data @ b.data, (a, b), "matmul", lambda g: (g @ b.data.T, a.data.T @ g))


def spmm(matrix: sp.spmatrix, x: Tensor) -> Tensor:
    """Constant sparse matrix times dense 2-D tensor"""
    if x.ndim != 2 or matrix.shape[1] != x.shape[0]:
        raise ShapeError("spmm", matrix.shape, x.shape)
    transposed = matrix.T.tocsr()
    return _make(np.asarray(matrix @ x.data), (x,), "spmm", lambda g: (np.asarray(transposed @ g),))


def concat(tensors: Sequence[Tensor], axis: int = -1) -> Tensor:
    if not tensors:
        raise ContractError("concat needs at least one tensor")
    first = tensors[0]
    axis = axis % first.ndim
    for other in tensors[1:]:
        if other.ndim != first.ndim or any(
            sa != sb for i, (sa, sb) in enumerate(zip(first.shape, other.shape)) if i != axis
        ):
            raise ShapeError("concat", first.shape, other.shape)
    offsets = np.cumsum([t.shape[axis] for t in tensors])[:-1]
    return _make(
        np.concatenate([t.data for t in tensors], axis=axis),
        tensors,
        "concat",
        lambda g: np.split(g, offsets, axis=axis),
    )


def tensor_sum(a: Tensor, axis: Optional[int] = None) -> Tensor:
    if axis is None:
        return _make(a.data.sum(), (a,), "sum", lambda g: (np.broadcast_to(g, a.shape).copy(),))
    axis = axis % a.ndim
    return _make(
        a.data.sum(axis=axis),
        (a,),
        "sum",
        lambda g: (np.broadcast_to(np.expand_dims(g, axis), a.shape).copy(),),
    )


def mean(a: Tensor, axis: Optional[int] = None) -> Tensor:
    count = a.data.size if axis is None else a.shape[axis]
    return scale(tensor_sum(a, axis), 1.0 / max(count, 1))


def reshape(a: Tensor, shape: Sequence[int]) -> Tensor:
    shape = tuple(shape)
    try:
        data = a.data.reshape(shape)
    except ValueError:
        raise ShapeError("reshape", a.shape, shape) from None
    return _make(data, (a,), "reshape", lambda g: (g.reshape(a.shape),))


def transpose(a: Tensor) -> Tensor:
    if a.ndim != 2:
        raise ContractError(f"transpose expects a matrix, got shape {a.shape}")
    return _make(a.data.T, (a,), "transpose", lambda g: (g.T,))


def broadcast_to(a: Tensor, shape: Sequence[int]) -> Tensor:
    """Explicit numpy-style broadcast; the gradient is summed back over the expanded axes"""
    shape = tuple(shape)
    try:
        data = np.broadcast_to(a.data, shape).copy()
    except ValueError:
        raise ShapeError("broadcast_to", a.shape, shape) from None
    return _make(data, (a,), "broadcast_to", lambda g: (_unbroadcast(g, a.shape),))


def exp(a: Tensor) -> Tensor:
    with np.errstate(over="ignore"):
        out = np.exp(a.data)
    return _make(out, (a,), "exp", lambda g: (g * out,))


def log(a: Tensor) -> Tensor:
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.log(a.data)
    return _make(out, (a,), "log", lambda g: (g / a.data,))


def sigmoid(a: Tensor) -> Tensor:
    out = expit(a.data)
    return _make(out, (a,), "sigmoid", lambda g: (g * out * (1.0 - out),))


def softplus(a: Tensor) -> Tensor:
    return _make(np.logaddexp(0.0, a.data), (a,), "softplus", lambda g: (g * expit(a.data),))


def relu(a: Tensor) -> Tensor:
    mask = a.data > 0
    return _make(np.where(mask, a.data, 0.0), (a,), "relu", lambda g: (g * mask,))


def tanh(a: Tensor) -> Tensor:
    out = np.tanh(a.data)
    return _make(out, (a,), "tanh", lambda g: (g * (1.0 - out * out),))


def clamp(a: Tensor, low: float, high: float) -> Tensor:
    inside = (a.data >= low) & (a.data <= high)
    return _make(np.clip(a.data, low, high), (a,), "clamp", lambda g: (g * inside,))


def _exprel_derivative(z: FloatArray) -> FloatArray:
    small = np.abs(z) < 1e-5
    safe = np.where(small, 1.0, z)
    with np.errstate(over="ignore"):
        exact = (np.exp(safe) - _exprel(safe)) / safe
    return np.where(small, 0.5 + z / 3.0 + z * z / 8.0, exact)


def exprel(a: Tensor) -> Tensor:
    """``(e^z - 1) / z`` with the removable singularity at 0 filled by 1"""
    return _make(_exprel(a.data), (a,), "exprel", lambda g: (g * _exprel_derivative(a.data),))


__all__ = [
    "Parameter",
    "Tensor",
    "add",
    "as_tensor",
    "broadcast_to",
    "clamp",
    "concat",
    "exp",
    "exprel",
    "is_grad_enabled",
    "log",
    "matmul",
    "mean",
    "mul",
    "neg",
    "no_grad",
    "relu",
    "reshape",
    "scale",
    "sigmoid",
    "softplus",
    "spmm",
    "sub",
    "tanh",
    "tensor_sum",
    "transpose",
]
