"""PNG figure emitters (batch tool: Agg backend, no display)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def bar_chart(names, values, path, title: str = "", ylabel: str = "") -> str:
    fig, ax = plt.subplots(figsize=(max(4.0, 0.45 * len(names) + 1.5), 4.0))
    ax.bar(np.arange(len(names)), values, color="#3b7dd8")
    ax.set_xticks(np.arange(len(names)))
    ax.set_xticklabels(names, rotation=60, ha="right", fontsize=8)
    if title:
        ax.set_title(title)
    if ylabel:
        ax.set_ylabel(ylabel)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return str(path)


def annotated_image(image: np.ndarray, title: str, path) -> str:
    c, h, w = image.shape
    dpi = 100
    fig, ax = plt.subplots(figsize=((w + 120) / dpi, (h + 120) / dpi), dpi=dpi)
    shown = image[0] if c == 1 else image.transpose(1, 2, 0)
    ax.imshow(np.clip(shown, 0.0, 1.0), cmap="gray" if c == 1 else None, vmin=0.0, vmax=1.0)
    ax.set_title(title)
    ax.axis("off")
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return str(path)
