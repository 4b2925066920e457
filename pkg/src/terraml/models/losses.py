"""Classification losses with analytic gradients.

Multi-class: mean softmax cross-entropy over samples. Multi-label: mean over
samples and classes of binary cross-entropy on sigmoid probabilities, with
probabilities clamped to [1e-7, 1 - 1e-7]; the gradient is zero where the
clamp is active, matching what finite differences of the clamped loss see.
"""

from __future__ import annotations

import numpy as np

from ..errors import NonBinaryInput, ShapeMismatch
from ..metrics.classification import MULTI_CLASS, MULTI_LABEL

CLAMP_EPS = 1e-7


def sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=np.float64)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    ez = np.exp(shifted)
    return ez / ez.sum(axis=1, keepdims=True)


def _class_indices(targets, n: int, k: int) -> np.ndarray:
    t = np.asarray(targets)
    if t.ndim == 2:
        if t.shape != (n, k):
            raise ShapeMismatch(f"targets {t.shape} vs logits ({n}, {k})")
        t = t.argmax(axis=1)
    if t.shape != (n,):
        raise ShapeMismatch(f"targets {t.shape} vs batch size {n}")
    t = t.astype(np.int64)
    if (t < 0).any() or (t >= k).any():
        raise ShapeMismatch(f"class index outside [0, {k})")
    return t


def softmax_cross_entropy(logits: np.ndarray, targets) -> tuple[float, np.ndarray]:
    """(mean loss, gradient wrt logits); targets are indices or one-hot rows."""
    logits = np.asarray(logits, dtype=np.float64)
    if logits.ndim != 2:
        raise ShapeMismatch(f"logits must be N×K, got {logits.shape}")
    n, k = logits.shape
    idx = _class_indices(targets, n, k)
    probs = softmax(logits)
    picked = np.clip(probs[np.arange(n), idx], 1e-300, None)
    loss = float(-np.log(picked).mean())
    grad = probs
    grad[np.arange(n), idx] -= 1.0
    return loss, grad / n


def sigmoid_binary_cross_entropy(logits: np.ndarray, targets) -> tuple[float, np.ndarray]:
    """(mean loss, gradient wrt logits); targets are an N×K binary matrix."""
    logits = np.asarray(logits, dtype=np.float64)
    targets = np.asarray(targets, dtype=np.float64)
    if logits.ndim != 2:
        raise ShapeMismatch(f"logits must be N×K, got {logits.shape}")
    if targets.shape != logits.shape:
        raise ShapeMismatch(f"targets {targets.shape} vs logits {logits.shape}")
    if not np.isin(targets, (0.0, 1.0)).all():
        raise NonBinaryInput("multi-label targets must be 0/1")
    n, k = logits.shape
    p = sigmoid(logits)
    pc = np.clip(p, CLAMP_EPS, 1.0 - CLAMP_EPS)
    loss = float(-(targets * np.log(pc) + (1.0 - targets) * np.log(1.0 - pc)).mean())
    inside = (p > CLAMP_EPS) & (p < 1.0 - CLAMP_EPS)
    dpc = (-targets / pc + (1.0 - targets) / (1.0 - pc)) / (n * k)
    grad = np.where(inside, dpc * p * (1.0 - p), 0.0)
    return loss, grad


def loss_and_grad(logits, targets, task_kind: str) -> tuple[float, np.ndarray]:
    if task_kind == MULTI_CLASS:
        return softmax_cross_entropy(logits, targets)
    if task_kind == MULTI_LABEL:
        return sigmoid_binary_cross_entropy(logits, targets)
    raise ValueError(f"unknown task kind {task_kind!r}")


def compute_loss(logits, targets, task_kind: str) -> float:
    return loss_and_grad(logits, targets, task_kind)[0]
