"""Dataset inspection figures."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from ..errors import IndexOutOfRange
from ..metrics.classification import MULTI_CLASS


def sample_label_names(dataset, index: int) -> list[str]:
    """Positive label names for one sample, vocabulary order."""
    target = dataset.target(index)
    names = list(dataset.vocabulary)
    if dataset.TASK_KIND == MULTI_CLASS:
        return [names[int(target)]]
    return [names[i] for i, bit in enumerate(np.asarray(target)) if bit == 1]


def show_image(dataset, index: int, out_path) -> dict:
    """Writes a PNG of the sample with its labels as the title.

    The raw (untransformed) image is rendered; the output raster is at least
    as large as the sample. Returns the labels and output path.
    """
    if not 0 <= index < len(dataset):
        raise IndexOutOfRange(f"index {index} outside [0, {len(dataset)})")
    image = dataset.load_raw_image(index)
    labels = sample_label_names(dataset, index)
    title = ", ".join(labels) if labels else "(no labels)"

    c, h, w = image.shape
    dpi = 100
    fig, ax = plt.subplots(figsize=((w + 120) / dpi, (h + 120) / dpi), dpi=dpi)
    shown = image[0] if c == 1 else image.transpose(1, 2, 0)
    ax.imshow(shown, cmap="gray" if c == 1 else None, vmin=0.0, vmax=1.0)
    ax.set_title(title)
    ax.axis("off")
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return {"index": index, "labels": labels, "title": title, "path": os.fspath(out_path)}
