"""Analytic backprop against central finite differences."""

import numpy as np
import pytest

from terraml.models import SmallCNNMultiClass, SmallCNNMultiLabel
from terraml.models.losses import loss_and_grad

H_STEP = 1e-4


def tiny_model(cls):
    model = cls(
        {
            "num_classes": 2,
            "learning_rate": 1e-3,
            "input_height": 8,
            "input_width": 8,
            "conv_channels": [2, 2],
            "hidden_units": 8,
        }
    )
    model.prepare(seed=13)
    return model


def analytic_and_numeric(model, x, targets, kind):
    logits = model.forward(x)
    _, grad_logits = loss_and_grad(logits, targets, kind)
    analytic = {k: v.copy() for k, v in model.backward(grad_logits).items()}

    numeric = {}
    params = model.parameters()
    for name, arr in params.items():
        flat = arr.reshape(-1)
        num = np.zeros_like(flat)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + H_STEP
            up, _ = loss_and_grad(model.forward(x), targets, kind)
            flat[i] = orig - H_STEP
            down, _ = loss_and_grad(model.forward(x), targets, kind)
            flat[i] = orig
            num[i] = (up - down) / (2 * H_STEP)
        numeric[name] = num.reshape(arr.shape)
    return analytic, numeric


def max_relative_error(analytic, numeric):
    worst = 0.0
    for name in analytic:
        a = analytic[name]
        n = numeric[name]
        denom = np.maximum(np.maximum(np.abs(a), np.abs(n)), 1e-6)
        worst = max(worst, float((np.abs(a - n) / denom).max()))
    return worst


@pytest.mark.parametrize(
    "cls,kind",
    [(SmallCNNMultiClass, "multi_class"), (SmallCNNMultiLabel, "multi_label")],
)
def test_gradient_check_tiny_cnn(cls, kind):
    model = tiny_model(cls)
    rng = np.random.default_rng(21)
    x = rng.random((3, 3, 8, 8))
    if kind == "multi_class":
        targets = rng.integers(0, 2, 3)
    else:
        targets = rng.integers(0, 2, (3, 2)).astype(np.float64)
    analytic, numeric = analytic_and_numeric(model, x, targets, kind)
    assert max_relative_error(analytic, numeric) < 1e-3


def test_gradients_flow_to_every_parameter():
    model = tiny_model(SmallCNNMultiLabel)
    rng = np.random.default_rng(22)
    x = rng.random((4, 3, 8, 8))
    targets = rng.integers(0, 2, (4, 2)).astype(np.float64)
    _, grad_logits = loss_and_grad(model.forward(x), targets, "multi_label")
    grads = model.backward(grad_logits)
    for name, g in grads.items():
        assert np.abs(g).max() > 0, f"no gradient signal reaches {name}"
