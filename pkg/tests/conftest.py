import numpy as np
import pytest
from PIL import Image

from terraml.datasets import MultiClassImageDataset, MultiLabelImageDataset


def write_png(path, array_hwc: np.ndarray) -> None:
    """uint8 H×W×C (or H×W) array to disk."""
    Image.fromarray(array_hwc).save(path)


def solid_rgb(h, w, r, g, b) -> np.ndarray:
    out = np.zeros((h, w, 3), dtype=np.uint8)
    out[..., 0] = r
    out[..., 1] = g
    out[..., 2] = b
    return out


@pytest.fixture
def multilabel_root(tmp_path):
    """3-sample multi-label fixture: classes (water, urban), known bits."""
    root = tmp_path / "ml"
    (root / "images").mkdir(parents=True)
    rng = np.random.default_rng(7)
    names = ["a.png", "b.png", "c.png"]
    for name in names:
        write_png(root / "images" / name, rng.integers(0, 255, (8, 8, 3)).astype(np.uint8))
    (root / "labels.csv").write_text(
        "image,water,urban\na.png,1,0\nb.png,1,1\nc.png,0,1\n", encoding="utf-8"
    )
    return root


@pytest.fixture
def multilabel_dataset(multilabel_root):
    return MultiLabelImageDataset(multilabel_root, batch_size=2)


@pytest.fixture
def multiclass_root(tmp_path):
    """beach: 2 images, forest: 3 images."""
    root = tmp_path / "mc"
    rng = np.random.default_rng(11)
    for cls, n in (("beach", 2), ("forest", 3)):
        (root / cls).mkdir(parents=True)
        for i in range(n):
            write_png(root / cls / f"{cls}{i}.png", rng.integers(0, 255, (8, 8, 3)).astype(np.uint8))
    return root


@pytest.fixture
def multiclass_dataset(multiclass_root):
    return MultiClassImageDataset(multiclass_root, batch_size=2)


def make_random_multilabel_root(root, n, k=3, size=8, seed=0):
    """n-sample multi-label fixture with random images and random bits."""
    rng = np.random.default_rng(seed)
    (root / "images").mkdir(parents=True)
    lines = ["image," + ",".join(f"c{j}" for j in range(k))]
    for i in range(n):
        name = f"s{i:04d}.png"
        write_png(root / "images" / name, rng.integers(0, 255, (size, size, 3)).astype(np.uint8))
        bits = rng.integers(0, 2, k)
        lines.append(name + "," + ",".join(str(int(b)) for b in bits))
    (root / "labels.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return root
