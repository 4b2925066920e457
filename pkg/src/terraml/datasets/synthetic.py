"""Synthetic shape imagery for demos and end-to-end tests.

Each class is a colored primitive (circle, square, triangle, stripe) drawn at
a random position and size over a noisy dark background. The multi-label
generator writes the images/ + labels.csv layout; the single-shape generator
writes the folder-per-class layout. Both are pure functions of the seed.
"""

from __future__ import annotations

import csv
import os

import numpy as np
from PIL import Image, ImageDraw

SHAPE_CLASSES = ("circle", "square", "triangle", "stripe")

_COLORS = {
    "circle": (225, 40, 40),
    "square": (40, 225, 40),
    "triangle": (40, 40, 225),
    "stripe": (225, 225, 225),
}


def _jitter_color(name: str, rng: np.random.Generator) -> tuple[int, int, int]:
    base = np.array(_COLORS[name], dtype=np.int64)
    jit = rng.integers(-15, 16, size=3)
    return tuple(int(v) for v in np.clip(base + jit, 0, 255))


def _center(
    size: int, extent: int, rng: np.random.Generator, jitter: int | None
) -> tuple[int, int]:
    if jitter is not None:
        lo = -min(jitter, size // 2 - extent - 1)
        hi = min(jitter, size // 2 - extent - 1)
        return (
            size // 2 + int(rng.integers(lo, hi + 1)),
            size // 2 + int(rng.integers(lo, hi + 1)),
        )
    return (
        int(rng.integers(extent + 2, size - extent - 2)),
        int(rng.integers(extent + 2, size - extent - 2)),
    )


def _draw_shape(
    draw: ImageDraw.ImageDraw,
    name: str,
    size: int,
    rng: np.random.Generator,
    jitter: int | None = None,
):
    """One filled primitive; ``jitter=None`` means fully random position."""
    color = _jitter_color(name, rng)
    centered = jitter is not None
    lo, hi = (size // 4, size // 3 + 1) if centered else (size // 8, size // 4 - 1)
    if name == "circle":
        r = int(rng.integers(lo, hi))
        cx, cy = _center(size, r, rng, jitter)
        draw.ellipse([cx - r, cy - r, cx + r, cy + r], fill=color)
    elif name == "square":
        half = int(rng.integers(lo, hi))
        cx, cy = _center(size, half, rng, jitter)
        draw.rectangle([cx - half, cy - half, cx + half, cy + half], fill=color)
    elif name == "triangle":
        r = int(rng.integers(lo, hi))
        cx, cy = _center(size, r, rng, jitter)
        pts = [(cx, cy - r), (cx - r, cy + r), (cx + r, cy + r)]
        draw.polygon(pts, fill=color)
    elif name == "stripe":
        width = int(rng.integers(max(4, lo // 2), max(6, hi // 2)))
        if centered:
            pos = size // 2 - width // 2 + int(rng.integers(-jitter, jitter + 1))
            pos = max(0, min(size - width - 1, pos))
        else:
            pos = int(rng.integers(0, size - width))
        if rng.random() < 0.5:
            draw.rectangle([0, pos, size - 1, pos + width], fill=color)
        else:
            draw.rectangle([pos, 0, pos + width, size - 1], fill=color)
    else:
        raise ValueError(f"unknown shape {name!r}")


def _background(size: int, rng: np.random.Generator, noise: int = 36) -> Image.Image:
    if noise <= 0:
        return Image.new("RGB", (size, size), (0, 0, 0))
    values = rng.integers(0, noise, size=(size, size, 3), dtype=np.int64).astype(np.uint8)
    return Image.fromarray(values, mode="RGB")


def generate_multilabel_shapes(
    root,
    n_images: int = 1000,
    seed: int = 0,
    size: int = 64,
    class_probability: float = 0.5,
) -> None:
    """images/ + labels.csv multi-label layout, one row per image."""
    rng = np.random.default_rng(seed)
    image_dir = os.path.join(os.fspath(root), "images")
    os.makedirs(image_dir, exist_ok=True)
    rows = []
    for i in range(n_images):
        present = rng.random(len(SHAPE_CLASSES)) < class_probability
        img = _background(size, rng)
        draw = ImageDraw.Draw(img)
        for name, here in zip(SHAPE_CLASSES, present):
            if here:
                _draw_shape(draw, name, size, rng, jitter=None)
        filename = f"shape_{i:05d}.png"
        img.save(os.path.join(image_dir, filename))
        rows.append([filename] + [str(int(b)) for b in present])
    with open(os.path.join(os.fspath(root), "labels.csv"), "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["image", *SHAPE_CLASSES])
        writer.writerows(rows)


def generate_multiclass_shapes(
    root,
    n_per_class: int = 100,
    seed: int = 0,
    size: int = 64,
    noise: int = 0,
    position_jitter: int | None = 4,
    start_index: int = 0,
) -> None:
    """Folder-per-class layout, exactly one shape per image.

    Defaults produce the clean variant (black background, large near-centered
    shapes) where the class signal dominates the pixels. ``position_jitter``
    moves shape centers by up to that many pixels; ``None`` places them fully
    at random. ``noise`` adds the multi-label generator's background speckle.
    ``start_index`` offsets filenames so several draws can share one root.
    """
    rng = np.random.default_rng(seed)
    for name in SHAPE_CLASSES:
        class_dir = os.path.join(os.fspath(root), name)
        os.makedirs(class_dir, exist_ok=True)
        for i in range(start_index, start_index + n_per_class):
            img = _background(size, rng, noise=noise)
            _draw_shape(ImageDraw.Draw(img), name, size, rng, jitter=position_jitter)
            img.save(os.path.join(class_dir, f"{name}_{i:04d}.png"))
