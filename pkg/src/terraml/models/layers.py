"""Network building blocks with explicit forward/backward passes.

Each layer caches what its backward pass needs; gradients land in
``layer.grads`` keyed like ``layer.params()``. Everything is float64.
"""

from __future__ import annotations

from collections import OrderedDict

import numpy as np

from ..errors import ShapeMismatch
from ..kernels import (
    conv2d_backward,
    conv2d_forward,
    maxpool2_backward,
    maxpool2_forward,
)
from ..seeding import derive_rng


def he_uniform(rng: np.random.Generator, shape, fan_in: int) -> np.ndarray:
    limit = np.sqrt(6.0 / fan_in)
    return rng.uniform(-limit, limit, size=shape)


class Layer:
    def params(self) -> "OrderedDict[str, np.ndarray]":
        return OrderedDict()

    def init(self, rng: np.random.Generator) -> None:
        pass

    def forward(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def backward(self, grad_out: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class Dense(Layer):
    def __init__(self, n_in: int, n_out: int):
        self.n_in = n_in
        self.n_out = n_out
        self.w = np.zeros((n_in, n_out))
        self.b = np.zeros(n_out)
        self.grads: dict[str, np.ndarray] = {}
        self._x: np.ndarray | None = None

    def params(self):
        return OrderedDict(w=self.w, b=self.b)

    def init(self, rng):
        self.w = he_uniform(rng, (self.n_in, self.n_out), fan_in=self.n_in)
        self.b = np.zeros(self.n_out)

    def forward(self, x):
        if x.ndim != 2 or x.shape[1] != self.n_in:
            raise ShapeMismatch(f"dense expects (N, {self.n_in}), got {x.shape}")
        self._x = x
        return x @ self.w + self.b

    def backward(self, grad_out):
        self.grads = {"w": self._x.T @ grad_out, "b": grad_out.sum(axis=0)}
        return grad_out @ self.w.T


class Conv2d(Layer):
    """Stride-1 convolution with symmetric zero padding."""

    def __init__(self, c_in: int, c_out: int, kernel: int = 3, pad: int = 1):
        self.c_in = c_in
        self.c_out = c_out
        self.kernel = kernel
        self.pad = pad
        self.w = np.zeros((c_out, c_in, kernel, kernel))
        self.b = np.zeros(c_out)
        self.grads: dict[str, np.ndarray] = {}
        self._x: np.ndarray | None = None

    def params(self):
        return OrderedDict(w=self.w, b=self.b)

    def init(self, rng):
        fan_in = self.c_in * self.kernel * self.kernel
        self.w = he_uniform(rng, self.w.shape, fan_in=fan_in)
        self.b = np.zeros(self.c_out)

    def forward(self, x):
        if x.ndim != 4 or x.shape[1] != self.c_in:
            raise ShapeMismatch(f"conv expects (N, {self.c_in}, H, W), got {x.shape}")
        self._x = np.ascontiguousarray(x)
        return conv2d_forward(self._x, self.w, self.b, self.pad)

    def backward(self, grad_out):
        grad_x, grad_w, grad_b = conv2d_backward(
            self._x, self.w, np.ascontiguousarray(grad_out), self.pad
        )
        self.grads = {"w": grad_w, "b": grad_b}
        return grad_x


class ReLU(Layer):
    def __init__(self):
        self._mask: np.ndarray | None = None

    def forward(self, x):
        self._mask = x > 0
        return np.where(self._mask, x, 0.0)

    def backward(self, grad_out):
        return np.where(self._mask, grad_out, 0.0)


class MaxPool2(Layer):
    """2×2 max pooling, stride 2; odd trailing rows/columns are dropped."""

    def __init__(self):
        self._switches: np.ndarray | None = None
        self._in_hw: tuple[int, int] | None = None

    def forward(self, x):
        self._in_hw = (x.shape[2], x.shape[3])
        out, self._switches = maxpool2_forward(np.ascontiguousarray(x))
        return out

    def backward(self, grad_out):
        h, w = self._in_hw
        return maxpool2_backward(self._switches, np.ascontiguousarray(grad_out), h, w)


class Flatten(Layer):
    def __init__(self):
        self._shape: tuple | None = None

    def forward(self, x):
        self._shape = x.shape
        return np.ascontiguousarray(x).reshape(x.shape[0], -1)

    def backward(self, grad_out):
        return grad_out.reshape(self._shape)


class Sequential:
    """Layer chain with named parameters ("<layer index>.<param name>")."""

    def __init__(self, layers):
        self.layers = list(layers)

    def init(self, seed: int) -> None:
        for i, layer in enumerate(self.layers):
            layer.init(derive_rng(seed, "init", i))

    def forward(self, x: np.ndarray, upto: int | None = None) -> np.ndarray:
        for layer in self.layers[:upto]:
            x = layer.forward(x)
        return x

    def backward(self, grad: np.ndarray) -> np.ndarray:
        for layer in reversed(self.layers):
            grad = layer.backward(grad)
        return grad

    def parameters(self) -> "OrderedDict[str, np.ndarray]":
        out: OrderedDict[str, np.ndarray] = OrderedDict()
        for i, layer in enumerate(self.layers):
            for name, arr in layer.params().items():
                out[f"{i}.{name}"] = arr
        return out

    def set_parameters(self, values: dict) -> None:
        params = self.parameters()
        if set(values) != set(params):
            missing = sorted(set(params) - set(values))
            extra = sorted(set(values) - set(params))
            raise ShapeMismatch(f"parameter names differ (missing={missing}, extra={extra})")
        for i, layer in enumerate(self.layers):
            for name in layer.params():
                incoming = np.asarray(values[f"{i}.{name}"], dtype=np.float64)
                current = getattr(layer, name)
                if incoming.shape != current.shape:
                    raise ShapeMismatch(
                        f"parameter {i}.{name}: expected {current.shape}, got {incoming.shape}"
                    )
                setattr(layer, name, incoming.copy())

    def gradients(self) -> dict:
        out = {}
        for i, layer in enumerate(self.layers):
            for name in layer.params():
                out[f"{i}.{name}"] = layer.grads[name]
        return out
