"""Image and target transforms, composable in configured order.

Image transforms map a C×H×W float array to another one; target transforms
map a target. Random transforms draw from the generator handed in by the
dataset, which derives it from (seed, epoch, sample index), so augmentation
decisions are reproducible and evaluation pipelines stay augmentation-free by
never containing a random transform (enforced at config validation).
"""

from __future__ import annotations

import numpy as np

from .errors import IndexOutOfRange, InvalidParams
from .kernels import resize_bilinear
from .params import Param


class ImageTransform:
    """Callable image → image; subclasses set RANDOM when they draw."""

    CLASSNAME = ""
    APPLIES_TO = "image"
    RANDOM = False
    PARAMS: dict[str, Param] = {}

    def __call__(self, image: np.ndarray, rng: np.random.Generator | None = None) -> np.ndarray:
        raise NotImplementedError

    def spec(self) -> dict:
        return {"name": self.CLASSNAME, "params": dict(self._params())}

    def _params(self) -> dict:
        return {}


class TargetTransform:
    CLASSNAME = ""
    APPLIES_TO = "target"
    RANDOM = False
    PARAMS: dict[str, Param] = {}

    def __call__(self, target):
        raise NotImplementedError


class ResizeTransform(ImageTransform):
    """Corner-aligned bilinear resize; output values clamped to [0, 1]."""

    CLASSNAME = "ResizeTransform"
    PARAMS = {
        "height": Param("int", required=True, minimum=1, doc="output height in pixels"),
        "width": Param("int", required=True, minimum=1, doc="output width in pixels"),
    }

    def __init__(self, height: int, width: int):
        if height < 1 or width < 1:
            raise InvalidParams(f"resize target must be at least 1x1, got {height}x{width}")
        self.height = int(height)
        self.width = int(width)

    def __call__(self, image, rng=None):
        image = np.ascontiguousarray(image, dtype=np.float64)
        return resize_bilinear(image, self.height, self.width)

    def _params(self):
        return {"height": self.height, "width": self.width}


class NormalizeTransform(ImageTransform):
    """Per-channel (x - mean) / std; accepts scalars or length-C vectors."""

    CLASSNAME = "NormalizeTransform"
    PARAMS = {
        "mean": Param("list", required=True, doc="per-channel mean (or single value)"),
        "std": Param("list", required=True, doc="per-channel std, entries > 0"),
    }

    def __init__(self, mean, std):
        try:
            self.mean = np.atleast_1d(np.asarray(mean, dtype=np.float64))
            self.std = np.atleast_1d(np.asarray(std, dtype=np.float64))
        except (TypeError, ValueError) as exc:
            raise InvalidParams(f"mean/std must be numeric: {exc}") from exc
        if (self.std <= 0).any():
            raise InvalidParams("std components must be > 0")

    def __call__(self, image, rng=None):
        image = np.asarray(image, dtype=np.float64)
        c = image.shape[0]
        for name, v in (("mean", self.mean), ("std", self.std)):
            if len(v) not in (1, c):
                raise InvalidParams(f"{name} has length {len(v)}, image has {c} channels")
        mean = self.mean if len(self.mean) == c else np.repeat(self.mean, c)
        std = self.std if len(self.std) == c else np.repeat(self.std, c)
        return (image - mean[:, None, None]) / std[:, None, None]

    def _params(self):
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}


class RandomHorizontalFlip(ImageTransform):
    """Reverses columns with probability p per draw."""

    CLASSNAME = "RandomHorizontalFlip"
    RANDOM = True
    PARAMS = {
        "p": Param("float", default=0.5, minimum=0.0, maximum=1.0, doc="flip probability"),
    }

    def __init__(self, p: float = 0.5):
        if not 0.0 <= p <= 1.0:
            raise InvalidParams(f"flip probability must be in [0, 1], got {p}")
        self.p = float(p)

    def __call__(self, image, rng=None):
        image = np.asarray(image, dtype=np.float64)
        if self.p == 0.0:
            return image
        if self.p == 1.0:
            return image[:, :, ::-1].copy()
        if rng is None:
            raise InvalidParams("random flip with 0 < p < 1 needs a generator")
        if rng.random() < self.p:
            return image[:, :, ::-1].copy()
        return image

    def _params(self):
        return {"p": self.p}


class OneHotEncode(TargetTransform):
    """Class index → length-K binary vector."""

    CLASSNAME = "OneHotEncode"
    PARAMS = {
        "num_classes": Param("int", required=True, minimum=2, doc="vector length K"),
    }

    def __init__(self, num_classes: int):
        if num_classes < 2:
            raise InvalidParams(f"num_classes must be at least 2, got {num_classes}")
        self.num_classes = int(num_classes)

    def __call__(self, target):
        idx = int(target)
        if not 0 <= idx < self.num_classes:
            raise IndexOutOfRange(f"class index {idx} outside [0, {self.num_classes})")
        out = np.zeros(self.num_classes, dtype=np.float64)
        out[idx] = 1.0
        return out


class Compose:
    """Applies transforms left to right; the empty composition is identity."""

    def __init__(self, transforms):
        self.transforms = list(transforms)

    def __call__(self, value, rng=None):
        for t in self.transforms:
            if getattr(t, "APPLIES_TO", "image") == "image":
                value = t(value, rng)
            else:
                value = t(value)
        return value


# Functional forms of the same operations.


def resize(image, height: int, width: int) -> np.ndarray:
    return ResizeTransform(height, width)(image)


def normalize(image, mean, std) -> np.ndarray:
    return NormalizeTransform(mean, std)(image)


def random_horizontal_flip(image, p: float, rng: np.random.Generator | None = None) -> np.ndarray:
    return RandomHorizontalFlip(p)(image, rng)


def one_hot_encode(target, num_classes: int) -> np.ndarray:
    return OneHotEncode(num_classes)(target)


def compose(transforms) -> Compose:
    return Compose(transforms)


BUILTIN_TRANSFORMS = (ResizeTransform, NormalizeTransform, RandomHorizontalFlip, OneHotEncode)
