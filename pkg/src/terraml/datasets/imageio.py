"""Raster decoding to float arrays.

Supported inputs are PNG, JPEG and (uncompressed) TIFF in 8- or 16-bit depth.
Output is always a C×H×W float64 array scaled to [0, 1], C in {1, 3}.
"""

from __future__ import annotations

import os

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..errors import ImageDecodeError, ImageFileMissing, UnsupportedBitDepth


def image_loader(path) -> np.ndarray:
    path = os.fspath(path)
    if not os.path.exists(path):
        raise ImageFileMissing(f"image file not found: {path}")
    try:
        with Image.open(path) as img:
            img.load()
            return _to_array(img, path)
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise ImageDecodeError(f"cannot decode {path}: {exc}") from exc


def _to_array(img: Image.Image, path: str) -> np.ndarray:
    mode = img.mode
    if mode == "P":
        img = img.convert("RGB")
        mode = "RGB"
    elif mode == "RGBA":
        img = img.convert("RGB")
        mode = "RGB"
    elif mode == "LA":
        img = img.convert("L")
        mode = "L"

    if mode == "RGB":
        arr = np.asarray(img, dtype=np.float64) / 255.0
        return np.ascontiguousarray(arr.transpose(2, 0, 1))
    if mode == "L":
        arr = np.asarray(img, dtype=np.float64) / 255.0
        return np.ascontiguousarray(arr[None, :, :])
    if mode in ("I;16", "I;16B", "I;16L"):
        arr = np.asarray(img, dtype=np.float64) / 65535.0
        return np.ascontiguousarray(arr[None, :, :])
    if mode == "I":
        arr = np.asarray(img)
        if arr.min() < 0 or arr.max() > 65535:
            raise UnsupportedBitDepth(f"{path}: integer image exceeds 16-bit range")
        return np.ascontiguousarray(arr[None, :, :].astype(np.float64) / 65535.0)
    raise UnsupportedBitDepth(f"{path}: unsupported pixel mode {mode!r}")
