"""Minimal reverse-mode automatic differentiation over dense float64 arrays.

Define-by-run: every primitive records its inputs and a backward closure on
the output tensor; ``Tensor.backward()`` on a scalar loss walks the graph in
reverse topological order and accumulates gradients into every
``requires_grad`` leaf. Broadcasting follows numpy; gradients of broadcast
operands are summed back to the operand's shape.

Every primitive checks its output for NaN/Inf and raises ``NonFinite``
immediately, so numerical trouble surfaces at the op that produced it.
"""

from __future__ import annotations

import numpy as np

from .errors import NonFinite, NonScalarLoss, ShapeMismatch

_grad_enabled = True


class no_grad:
    """Context manager that disables graph recording (inference paths)."""

    def __enter__(self):
        global _grad_enabled
        self._prev = _grad_enabled
        _grad_enabled = False
        return self

    def __exit__(self, *exc):
        global _grad_enabled
        _grad_enabled = self._prev
        return False


def _unbroadcast(grad: np.ndarray, shape: tuple) -> np.ndarray:
    """Sum ``grad`` down to ``shape`` (inverse of numpy broadcasting)."""
    if grad.shape == shape:
        return grad
    extra = grad.ndim - len(shape)
    if extra > 0:
        grad = grad.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, s in enumerate(shape) if s == 1 and grad.shape[i] != 1)
    if axes:
        grad = grad.sum(axis=axes, keepdims=True)
    return grad


def _check_finite(data: np.ndarray, op: str) -> None:
    if not np.all(np.isfinite(data)):
        raise NonFinite(f"{op} produced NaN/Inf")


class Tensor:
    """Dense float64 array node in the computation graph."""

    __slots__ = ("data", "grad", "requires_grad", "_parents", "_backward")

    def __init__(self, data, requires_grad: bool = False):
        self.data = np.asarray(data, dtype=np.float64)
        self.grad: np.ndarray | None = None
        self.requires_grad = bool(requires_grad)
        self._parents: tuple = ()
        self._backward = None

    @property
    def shape(self) -> tuple:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return self.data.size

    def item(self) -> float:
        return float(self.data)

    def detach(self) -> "Tensor":
        return Tensor(self.data)

    def zero_grad(self) -> None:
        self.grad = None

    def __repr__(self):
        return f"Tensor(shape={self.shape}, requires_grad={self.requires_grad})"

    # --- graph construction ------------------------------------------

    def backward(self) -> None:
        """Populate ``grad`` of every reachable requires_grad tensor.

        The receiver must be scalar (size 1); gradients accumulate across
        fan-out, so a value used twice receives the sum of both paths.
        """
        if self.data.size != 1:
            raise NonScalarLoss(f"backward() requires a scalar, got shape {self.shape}")
        topo: list[Tensor] = []
        visited: set[int] = set()
        stack: list[tuple[Tensor, bool]] = [(self, False)]
        while stack:
            node, processed = stack.pop()
            if processed:
                topo.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for parent in node._parents:
                if id(parent) not in visited:
                    stack.append((parent, False))
        self.grad = np.ones_like(self.data)
        for node in reversed(topo):
            if node._backward is None or node.grad is None:
                continue
            for parent, grad in zip(node._parents, node._backward(node.grad)):
                if grad is None or not parent.requires_grad:
                    continue
                if parent.grad is None:
                    parent.grad = np.zeros_like(parent.data)
                parent.grad += grad

    # --- arithmetic ----------------------------------------------------

    def __add__(self, other):
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(_as_tensor(other), self)

    def __mul__(self, other):
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(_as_tensor(other), self)

    def __neg__(self):
        return mul(self, -1.0)

    def __matmul__(self, other):
        return matmul(self, other)

    def __pow__(self, exponent):
        return power(self, exponent)

    def __getitem__(self, idx):
        return take(self, idx)

    # --- elementwise / reductions (method sugar) ------------------------

    def exp(self):
        return exp(self)

    def log(self):
        return log(self)

    def sqrt(self):
        return sqrt(self)

    def tanh(self):
        return tanh(self)

    def sigmoid(self):
        return sigmoid(self)

    def softplus(self):
        return softplus(self)

    def relu(self):
        return relu(self)

    def sum(self, axis=None, keepdims=False):
        return tsum(self, axis=axis, keepdims=keepdims)

    def mean(self, axis=None, keepdims=False):
        return tmean(self, axis=axis, keepdims=keepdims)

    def max(self, axis=None, keepdims=False):
        return tmax(self, axis=axis, keepdims=keepdims)

    def softmax(self, axis=-1):
        return softmax(self, axis=axis)

    def reshape(self, *shape):
        return reshape(self, shape if len(shape) > 1 else shape[0])

    def transpose(self, axes):
        return transpose(self, axes)


def _as_tensor(x) -> Tensor:
    return x if isinstance(x, Tensor) else Tensor(x)


def _from_op(data: np.ndarray, parents: tuple, backward, op: str) -> Tensor:
    _check_finite(data, op)
    out = Tensor(data)
    if _grad_enabled and any(p.requires_grad for p in parents):
        out.requires_grad = True
        out._parents = parents
        out._backward = backward
    return out


def tensor(data) -> Tensor:
    return Tensor(data)


def parameter(data) -> Tensor:
    return Tensor(data, requires_grad=True)


# --- binary primitives -----------------------------------------------


def add(a, b) -> Tensor:
    a, b = _as_tensor(a), _as_tensor(b)
    try:
        data = a.data + b.data
    except ValueError as exc:
        raise ShapeMismatch(f"add: {a.shape} vs {b.shape}") from exc

    def backward(g):
        return _unbroadcast(g, a.shape), _unbroadcast(g, b.shape)

    return _from_op(data, (a, b), backward, "add")


def sub(a, b) -> Tensor:
    a, b = _as_tensor(a), _as_tensor(b)
    try:
        data = a.data - b.data
    except ValueError as exc:
        raise ShapeMismatch(f"sub: {a.shape} vs {b.shape}") from exc

    def backward(g):
        return _unbroadcast(g, a.shape), _unbroadcast(-g, b.shape)

    return _from_op(data, (a, b), backward, "sub")


def mul(a, b) -> Tensor:
    a, b = _as_tensor(a), _as_tensor(b)
    try:
        data = a.data * b.data
    except ValueError as exc:
        raise ShapeMismatch(f"mul: {a.shape} vs {b.shape}") from exc

    def backward(g):
        return _unbroadcast(g * b.data, a.shape), _unbroadcast(g * a.data, b.shape)

    return _from_op(data, (a, b), backward, "mul")


def div(a, b) -> Tensor:
    a, b = _as_tensor(a), _as_tensor(b)
    try:
        with np.errstate(all="ignore"):
            data = a.data / b.data
    except ValueError as exc:
        raise ShapeMismatch(f"div: {a.shape} vs {b.shape}") from exc

    def backward(g):
        ga = _unbroadcast(g / b.data, a.shape)
        gb = _unbroadcast(-g * a.data / (b.data * b.data), b.shape)
        return ga, gb

    return _from_op(data, (a, b), backward, "div")


def matmul(a, b) -> Tensor:
    """Matrix product; both operands must have ndim >= 2 (leading dims broadcast)."""
    a, b = _as_tensor(a), _as_tensor(b)
    if a.ndim < 2 or b.ndim < 2:
        raise ShapeMismatch(f"matmul needs ndim >= 2 operands, got {a.shape} @ {b.shape}")
    try:
        data = np.matmul(a.data, b.data)
    except ValueError as exc:
        raise ShapeMismatch(f"matmul: {a.shape} @ {b.shape}") from exc

    def backward(g):
        ga = _unbroadcast(np.matmul(g, np.swapaxes(b.data, -1, -2)), a.shape)
        gb = _unbroadcast(np.matmul(np.swapaxes(a.data, -1, -2), g), b.shape)
        return ga, gb

    return _from_op(data, (a, b), backward, "matmul")


def power(a, exponent: float) -> Tensor:
    a = _as_tensor(a)
    exponent = float(exponent)
    with np.errstate(all="ignore"):
        data = a.data**exponent

    def backward(g):
        return (g * exponent * a.data ** (exponent - 1.0),)

    return _from_op(data, (a,), backward, "power")


# --- elementwise primitives -------------------------------------------


def exp(a) -> Tensor:
    a = _as_tensor(a)
    with np.errstate(all="ignore"):
        data = np.exp(a.data)

    def backward(g):
        return (g * data,)

    return _from_op(data, (a,), backward, "exp")


def log(a) -> Tensor:
    a = _as_tensor(a)
    with np.errstate(all="ignore"):
        data = np.log(a.data)

    def backward(g):
        return (g / a.data,)

    return _from_op(data, (a,), backward, "log")


def sqrt(a) -> Tensor:
    a = _as_tensor(a)
    with np.errstate(all="ignore"):
        data = np.sqrt(a.data)

    def backward(g):
        return (g * 0.5 / data,)

    return _from_op(data, (a,), backward, "sqrt")


def tanh(a) -> Tensor:
    a = _as_tensor(a)
    data = np.tanh(a.data)

    def backward(g):
        return (g * (1.0 - data * data),)

    return _from_op(data, (a,), backward, "tanh")


def sigmoid(a) -> Tensor:
    a = _as_tensor(a)
    with np.errstate(all="ignore"):
        # stable in both tails: the exponent is always <= 0
        pos = 1.0 / (1.0 + np.exp(-np.abs(a.data)))
        data = np.where(a.data >= 0, pos, 1.0 - pos)

    def backward(g):
        return (g * data * (1.0 - data),)

    return _from_op(data, (a,), backward, "sigmoid")


def softplus(a) -> Tensor:
    a = _as_tensor(a)
    with np.errstate(all="ignore"):
        # log(1+e^x) = max(x,0) + log1p(e^{-|x|}); never overflows
        data = np.maximum(a.data, 0.0) + np.log1p(np.exp(-np.abs(a.data)))

    def backward(g):
        pos = 1.0 / (1.0 + np.exp(-np.abs(a.data)))
        sig = np.where(a.data >= 0, pos, 1.0 - pos)
        return (g * sig,)

    return _from_op(data, (a,), backward, "softplus")


def relu(a) -> Tensor:
    a = _as_tensor(a)
    data = np.maximum(a.data, 0.0)

    def backward(g):
        return (g * (a.data > 0),)

    return _from_op(data, (a,), backward, "relu")


# --- reductions ------------------------------------------------------


def _restore_reduced(g: np.ndarray, shape: tuple, axis, keepdims: bool) -> np.ndarray:
    if axis is None:
        return np.broadcast_to(g, shape).copy() if np.ndim(g) == 0 else np.full(shape, g)
    if not keepdims:
        axes = axis if isinstance(axis, tuple) else (axis,)
        for ax in sorted(a % len(shape) for a in axes):
            g = np.expand_dims(g, ax)
    return np.broadcast_to(g, shape).copy()


def tsum(a, axis=None, keepdims: bool = False) -> Tensor:
    a = _as_tensor(a)
    data = a.data.sum(axis=axis, keepdims=keepdims)

    def backward(g):
        return (_restore_reduced(g, a.shape, axis, keepdims),)

    return _from_op(data, (a,), backward, "sum")


def tmean(a, axis=None, keepdims: bool = False) -> Tensor:
    a = _as_tensor(a)
    data = a.data.mean(axis=axis, keepdims=keepdims)
    count = a.data.size if axis is None else a.data.size / data.size

    def backward(g):
        return (_restore_reduced(g, a.shape, axis, keepdims) / count,)

    return _from_op(data, (a,), backward, "mean")


def tmax(a, axis=None, keepdims: bool = False) -> Tensor:
    """Max reduction; ties share the subgradient equally."""
    a = _as_tensor(a)
    data = a.data.max(axis=axis, keepdims=keepdims)

    def backward(g):
        full = data if keepdims or axis is None else np.expand_dims(
            data, axis if isinstance(axis, tuple) else (axis,)
        )
        mask = (a.data == full).astype(np.float64)
        mask /= mask.sum(axis=axis, keepdims=True) if axis is not None else mask.sum()
        return (mask * _restore_reduced(g, a.shape, axis, keepdims),)

    return _from_op(data, (a,), backward, "max")


def softmax(a, axis=-1) -> Tensor:
    a = _as_tensor(a)
    shifted = a.data - a.data.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    data = e / e.sum(axis=axis, keepdims=True)

    def backward(g):
        inner = (g * data).sum(axis=axis, keepdims=True)
        return (data * (g - inner),)

    return _from_op(data, (a,), backward, "softmax")


def logsumexp(a, axis=-1, keepdims: bool = False) -> Tensor:
    a = _as_tensor(a)
    m = a.data.max(axis=axis, keepdims=True)
    e = np.exp(a.data - m)
    s = e.sum(axis=axis, keepdims=True)
    data = np.log(s) + m
    if not keepdims:
        data = np.squeeze(data, axis=axis)

    def backward(g):
        return ((e / s) * _restore_reduced(g, a.shape, axis, keepdims),)

    return _from_op(data, (a,), backward, "logsumexp")


# --- structural primitives --------------------------------------------


def reshape(a, shape) -> Tensor:
    a = _as_tensor(a)
    data = a.data.reshape(shape)

    def backward(g):
        return (g.reshape(a.shape),)

    return _from_op(data, (a,), backward, "reshape")


def transpose(a, axes) -> Tensor:
    a = _as_tensor(a)
    data = np.transpose(a.data, axes)
    inverse = np.argsort(axes)

    def backward(g):
        return (np.transpose(g, inverse),)

    return _from_op(data, (a,), backward, "transpose")


def concat(tensors, axis=0) -> Tensor:
    tensors = [_as_tensor(t) for t in tensors]
    data = np.concatenate([t.data for t in tensors], axis=axis)
    sizes = [t.shape[axis] for t in tensors]
    offsets = np.cumsum([0] + sizes)

    def backward(g):
        slicer = [slice(None)] * g.ndim
        grads = []
        for i in range(len(tensors)):
            slicer[axis] = slice(offsets[i], offsets[i + 1])
            grads.append(g[tuple(slicer)])
        return tuple(grads)

    return _from_op(data, tuple(tensors), backward, "concat")


def stack(tensors, axis=0) -> Tensor:
    tensors = [_as_tensor(t) for t in tensors]
    data = np.stack([t.data for t in tensors], axis=axis)

    def backward(g):
        return tuple(np.take(g, i, axis=axis) for i in range(len(tensors)))

    return _from_op(data, tuple(tensors), backward, "stack")


def take(a, idx) -> Tensor:
    """Slice/index ``a``; gradients scatter-add back (repeated indices accumulate)."""
    a = _as_tensor(a)
    data = a.data[idx]

    def backward(g):
        full = np.zeros_like(a.data)
        np.add.at(full, idx, g)
        return (full,)

    return _from_op(data, (a,), backward, "take")


def embedding_lookup(table, ids) -> Tensor:
    """Row lookup: table (V, D), integer ids of any shape -> ids.shape + (D,)."""
    table = _as_tensor(table)
    ids = np.asarray(ids, dtype=np.int64)
    data = table.data[ids]

    def backward(g):
        full = np.zeros_like(table.data)
        np.add.at(full, ids, g)
        return (full,)

    return _from_op(data, (table,), backward, "embedding_lookup")


def where(cond, a, b) -> Tensor:
    """Elementwise select by a constant boolean/0-1 mask (no gradient to the mask)."""
    a, b = _as_tensor(a), _as_tensor(b)
    cond = np.asarray(cond, dtype=bool)
    data = np.where(cond, a.data, b.data)

    def backward(g):
        ga = _unbroadcast(np.where(cond, g, 0.0), a.shape)
        gb = _unbroadcast(np.where(cond, 0.0, g), b.shape)
        return ga, gb

    return _from_op(data, (a, b), backward, "where")
