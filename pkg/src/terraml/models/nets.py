"""Model contract and the two reference architectures.

Both nets come in a multi-class and a multi-label variant; the variant fixes
the loss, the probability map (softmax vs sigmoid) and the decision rule
(argmax vs per-class threshold, positive when probability >= threshold).
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import (
    PretrainedUnavailable,
    ShapeMismatch,
    UncheckpointedModel,
)
from ..metrics.classification import MULTI_CLASS, MULTI_LABEL
from ..params import Param, validate_params
from ..seeding import derive_rng
from ..transforms import BUILTIN_TRANSFORMS
from .layers import Conv2d, Dense, Flatten, MaxPool2, ReLU, Sequential
from .losses import sigmoid, softmax

_COMMON_PARAMS = {
    "num_classes": Param("int", required=True, minimum=2, doc="output classes K"),
    "learning_rate": Param("float", required=True, exclusive_minimum=0.0, doc="Adam step size"),
    "pretrained": Param("bool", default=False, doc="initialize from a local checkpoint"),
    "pretrained_checkpoint": Param(
        "str", default=None, doc="checkpoint directory used when pretrained is true"
    ),
    "input_channels": Param("int", default=3, minimum=1, doc="expected image channels"),
    "input_height": Param("int", default=64, minimum=1, doc="expected image height"),
    "input_width": Param("int", default=64, minimum=1, doc="expected image width"),
    "class_names": Param("list", default=[], doc="label vocabulary recorded in checkpoints"),
    "eval_transforms": Param(
        "list", default=None, doc="transform specs applied before single-image prediction"
    ),
}

_THRESHOLD_PARAM = {
    "threshold": Param(
        "float",
        default=0.5,
        exclusive_minimum=0.0,
        exclusive_maximum=1.0,
        doc="decision boundary on sigmoid probabilities (inclusive)",
    ),
}


def _transform_from_spec(spec: dict):
    by_name = {cls.CLASSNAME: cls for cls in BUILTIN_TRANSFORMS}
    cls = by_name.get(spec.get("name"))
    if cls is None:
        # Custom transforms resolve through the registry; imported lazily to
        # keep models importable without the registry populated.
        from ..core.registry import ComponentKind, resolve_component

        cls = resolve_component(ComponentKind.TRANSFORM, spec.get("name", ""))
    return cls(**spec.get("params", {}))


class BaseModel:
    """Common behavior: prepare, forward/backward, predict, save/load."""

    CLASSNAME = ""
    TASK_KIND = ""
    PARAMS: dict[str, Param] = {}

    def __init__(self, config: dict | None = None):
        self.config = validate_params(dict(config or {}), type(self).PARAMS, "model.config")
        if self.config["eval_transforms"] is None:
            self.config["eval_transforms"] = [
                {
                    "name": "ResizeTransform",
                    "params": {
                        "height": self.config["input_height"],
                        "width": self.config["input_width"],
                    },
                }
            ]
        self.has_default_class_names = not self.config["class_names"]
        if self.has_default_class_names:
            self.config["class_names"] = [f"class_{i}" for i in range(self.num_classes)]
        self.net: Sequential | None = None
        self.head_width = self.num_classes

    # -- config accessors ---------------------------------------------------

    @property
    def num_classes(self) -> int:
        return self.config["num_classes"]

    @property
    def learning_rate(self) -> float:
        return self.config["learning_rate"]

    @property
    def threshold(self) -> float:
        return self.config.get("threshold", 0.5)

    @property
    def class_names(self) -> tuple[str, ...]:
        return tuple(self.config["class_names"])

    def set_class_names(self, names) -> None:
        names = [str(n) for n in names]
        if len(names) != self.num_classes:
            raise ShapeMismatch(f"{len(names)} class names but num_classes={self.num_classes}")
        self.config["class_names"] = names
        self.has_default_class_names = False

    @property
    def input_shape(self) -> tuple[int, int, int]:
        return (
            self.config["input_channels"],
            self.config["input_height"],
            self.config["input_width"],
        )

    # -- lifecycle ------------------------------------------------------------

    def _build_net(self, head_width: int) -> Sequential:
        raise NotImplementedError

    def build_and_init(self, seed: int) -> None:
        self.net = self._build_net(self.num_classes)
        self.head_width = self.num_classes
        self.net.init(seed)

    def prepare(self, seed: int = 42) -> None:
        """Builds the network and initializes parameters deterministically."""
        self.build_and_init(seed)
        if self.config["pretrained"]:
            path = self.config["pretrained_checkpoint"]
            if not path or not os.path.isdir(path):
                raise PretrainedUnavailable(
                    "pretrained=true needs pretrained_checkpoint pointing at a local "
                    f"checkpoint directory, got {path!r}"
                )
            from .checkpoint import load_checkpoint

            source = load_checkpoint(path, expected_num_classes=self.num_classes)
            self.net.set_parameters(source.parameters())

    def _require_net(self) -> Sequential:
        if self.net is None:
            raise UncheckpointedModel("call prepare() or load_model() first")
        return self.net

    def reset_head(self, width: int, seed: int) -> None:
        """Fresh output layer of the requested width; backbone untouched."""
        net = self._require_net()
        old = net.layers[-1]
        head = Dense(old.n_in, width)
        head.init(derive_rng(seed, "head"))
        net.layers[-1] = head
        self.head_width = width

    # -- math -----------------------------------------------------------------

    def _check_batch(self, images: np.ndarray) -> np.ndarray:
        images = np.asarray(images, dtype=np.float64)
        if images.ndim != 4 or images.shape[1:] != self.input_shape:
            raise ShapeMismatch(
                f"expected batch of shape (N, {self.input_shape[0]}, "
                f"{self.input_shape[1]}, {self.input_shape[2]}), got {images.shape}"
            )
        return images

    def forward(self, images: np.ndarray) -> np.ndarray:
        return self._require_net().forward(self._check_batch(images))

    def features(self, images: np.ndarray) -> np.ndarray:
        """Penultimate-layer activations (input to the output head)."""
        net = self._require_net()
        return net.forward(self._check_batch(images), upto=len(net.layers) - 1)

    def backward(self, grad_logits: np.ndarray) -> dict:
        net = self._require_net()
        net.backward(grad_logits)
        return net.gradients()

    def parameters(self) -> dict:
        return self._require_net().parameters()

    def gradients(self) -> dict:
        return self._require_net().gradients()

    def probabilities(self, logits: np.ndarray) -> np.ndarray:
        if self.TASK_KIND == MULTI_CLASS:
            return softmax(np.asarray(logits, dtype=np.float64))
        return sigmoid(np.asarray(logits, dtype=np.float64))

    def decide(self, probs: np.ndarray) -> np.ndarray:
        """Decisions from probabilities: one-hot argmax rows or thresholded bits."""
        probs = np.asarray(probs)
        if self.TASK_KIND == MULTI_CLASS:
            out = np.zeros_like(probs, dtype=np.int64)
            out[np.arange(len(probs)), probs.argmax(axis=1)] = 1
            return out
        return (probs >= self.threshold).astype(np.int64)

    # -- inference on raw images ------------------------------------------------

    def predict_image(self, image: np.ndarray) -> tuple[list[str], np.ndarray]:
        """(predicted label names, per-class probabilities) for one raw image.

        The image runs through the model's recorded eval transforms first.
        """
        self._require_net()
        image = np.asarray(image, dtype=np.float64)
        if image.ndim != 3:
            raise ShapeMismatch(f"expected one C×H×W image, got {image.shape}")
        for spec in self.config["eval_transforms"]:
            image = _transform_from_spec(spec)(image)
        logits = self.forward(image[None])
        probs = self.probabilities(logits)[0]
        names = self.class_names
        if self.TASK_KIND == MULTI_CLASS:
            labels = [names[int(probs.argmax())]]
        else:
            labels = [names[i] for i in range(len(names)) if probs[i] >= self.threshold]
        return labels, probs

    # -- persistence ------------------------------------------------------------

    def save_model(self, directory, run_id: str, epoch: int, metrics: dict | None = None):
        from .checkpoint import checkpoint_path, save_checkpoint

        target = checkpoint_path(directory, run_id, epoch)
        return save_checkpoint(self, target, epoch=epoch, run_id=run_id, metrics=metrics or {})

    def load_model(self, directory) -> "BaseModel":
        """Loads parameters from a checkpoint directory into this model.

        Accepts the checkpoint directory itself, a run directory containing
        ``best/``, or a model directory with a single run inside.
        """
        from .checkpoint import find_checkpoint_dir, load_checkpoint

        source = load_checkpoint(
            find_checkpoint_dir(directory), expected_num_classes=self.num_classes
        )
        self.net = source.net
        self.head_width = source.head_width
        if source.class_names:
            self.config["class_names"] = list(source.class_names)
        return self

    def train_and_evaluate_model(
        self,
        train_dataset,
        epochs: int,
        model_directory,
        val_dataset,
        run_id: str = "1",
    ):
        from .training import train_and_evaluate

        return train_and_evaluate(
            self,
            train_dataset=train_dataset,
            val_dataset=val_dataset,
            epochs=epochs,
            model_directory=model_directory,
            run_id=run_id,
        )


class _ReferenceMLP(BaseModel):
    """flatten → hidden dense + ReLU → K-way head."""

    PARAMS = {
        **_COMMON_PARAMS,
        "hidden_units": Param("int", default=128, minimum=1, doc="hidden layer width"),
    }

    def _build_net(self, head_width: int) -> Sequential:
        c, h, w = self.input_shape
        hidden = self.config["hidden_units"]
        return Sequential(
            [Flatten(), Dense(c * h * w, hidden), ReLU(), Dense(hidden, head_width)]
        )


class _SmallCNN(BaseModel):
    """Two 3×3 conv + ReLU + 2×2 maxpool stages, hidden dense, K-way head."""

    PARAMS = {
        **_COMMON_PARAMS,
        "hidden_units": Param("int", default=32, minimum=1, doc="hidden dense width"),
        "conv_channels": Param("list", default=[8, 16], doc="channels of the two conv stages"),
    }

    def __init__(self, config=None):
        super().__init__(config)
        cc = self.config["conv_channels"]
        if (
            len(cc) != 2
            or not all(isinstance(c, int) and not isinstance(c, bool) and c >= 1 for c in cc)
        ):
            raise ShapeMismatch(f"conv_channels must be two integers >= 1, got {cc!r}")

    def _build_net(self, head_width: int) -> Sequential:
        c, h, w = self.input_shape
        c1, c2 = self.config["conv_channels"]
        feat_h, feat_w = h // 2 // 2, w // 2 // 2
        if feat_h < 1 or feat_w < 1:
            raise ShapeMismatch(f"input {h}×{w} too small for two pooling stages")
        hidden = self.config["hidden_units"]
        return Sequential(
            [
                Conv2d(c, c1, kernel=3, pad=1),
                ReLU(),
                MaxPool2(),
                Conv2d(c1, c2, kernel=3, pad=1),
                ReLU(),
                MaxPool2(),
                Flatten(),
                Dense(c2 * feat_h * feat_w, hidden),
                ReLU(),
                Dense(hidden, head_width),
            ]
        )


class ReferenceMLPMultiClass(_ReferenceMLP):
    CLASSNAME = "ReferenceMLPMultiClass"
    TASK_KIND = MULTI_CLASS


class ReferenceMLPMultiLabel(_ReferenceMLP):
    CLASSNAME = "ReferenceMLPMultiLabel"
    TASK_KIND = MULTI_LABEL
    PARAMS = {**_ReferenceMLP.PARAMS, **_THRESHOLD_PARAM}


class SmallCNNMultiClass(_SmallCNN):
    CLASSNAME = "SmallCNNMultiClass"
    TASK_KIND = MULTI_CLASS


class SmallCNNMultiLabel(_SmallCNN):
    CLASSNAME = "SmallCNNMultiLabel"
    TASK_KIND = MULTI_LABEL
    PARAMS = {**_SmallCNN.PARAMS, **_THRESHOLD_PARAM}


BUILTIN_MODELS = (
    ReferenceMLPMultiClass,
    ReferenceMLPMultiLabel,
    SmallCNNMultiClass,
    SmallCNNMultiLabel,
)
