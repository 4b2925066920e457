"""Dataset contract: samples, vocabularies, batching and inspection."""

from __future__ import annotations

import itertools
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import IndexOutOfRange, SchemaError, ShapeMismatch
from ..metrics.classification import MULTI_CLASS, MULTI_LABEL
from ..params import Param
from ..seeding import derive_rng
from ..transforms import Compose
from .imageio import image_loader


@dataclass(frozen=True)
class Sample:
    """One item: identifier, C×H×W float image, class index or binary vector."""

    id: str
    image: np.ndarray
    target: object


@dataclass(frozen=True)
class LabelVocabulary:
    """Ordered class names; index i ↔ names[i] is the sole mapping used anywhere."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.names) < 2:
            raise SchemaError(f"need at least 2 classes, got {len(self.names)}")
        if len(set(self.names)) != len(self.names):
            raise SchemaError("class names must be unique")

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


@dataclass(frozen=True)
class DistributionTable:
    """Per-class sample counts, vocabulary order."""

    rows: tuple[tuple[str, int], ...]
    total_samples: int

    def count(self, name: str) -> int:
        for row_name, count in self.rows:
            if row_name == name:
                return count
        raise KeyError(name)

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("class,count\n")
            for name, count in self.rows:
                fh.write(f"{name},{count}\n")


@dataclass(frozen=True)
class Batch:
    indices: np.ndarray  # dataset positions, permutation order
    ids: tuple[str, ...]
    images: np.ndarray  # B×C×H×W
    targets: np.ndarray  # B (class indices) or B×K


class ImageDataset:
    """Base reader: concrete classes fill ids/paths/targets at load time.

    Iteration is deterministic: the shuffle permutation is a pure function of
    (seed, epoch), and augmentation draws derive from (seed, epoch, index), so
    worker prefetch can never change what a run computes.
    """

    CLASSNAME = ""
    TASK_KIND = ""
    PARAMS = {
        "root": Param("str", required=True, doc="dataset root directory"),
        "batch_size": Param("int", required=True, minimum=1, doc="samples per batch"),
        "shuffle": Param("bool", default=False, doc="reshuffle at every epoch"),
        "num_workers": Param("int", default=0, minimum=0, doc="prefetch decoder threads"),
        "transforms": Param("list", default=[], doc="image transform specs, applied in order"),
        "target_transforms": Param("list", default=[], doc="target transform specs"),
    }

    def __init__(
        self,
        root,
        batch_size: int = 1,
        shuffle: bool = False,
        num_workers: int = 0,
        transforms=(),
        target_transforms=(),
        seed: int = 42,
    ):
        self.root = root
        self.batch_size = int(batch_size)
        self.shuffle = bool(shuffle)
        self.num_workers = int(num_workers)
        self.transforms = Compose(transforms)
        self.target_transforms = Compose(target_transforms)
        self.seed = int(seed)
        self._ids: list[str] = []
        self._paths: list[str] = []
        self._targets: list = []
        self._vocabulary: LabelVocabulary | None = None
        self._load_index()

    def _load_index(self) -> None:
        raise NotImplementedError

    @property
    def vocabulary(self) -> LabelVocabulary:
        assert self._vocabulary is not None
        return self._vocabulary

    @property
    def num_classes(self) -> int:
        return len(self.vocabulary)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(self._ids)

    def __len__(self) -> int:
        return len(self._ids)

    def target(self, index: int):
        """Raw target without transforms (cheap, no image decode)."""
        return self._targets[index]

    def image_path(self, index: int) -> str:
        return self._paths[index]

    def load_raw_image(self, index: int) -> np.ndarray:
        if not 0 <= index < len(self):
            raise IndexOutOfRange(f"index {index} outside [0, {len(self)})")
        return image_loader(self._paths[index])

    def get_item(self, index: int, epoch: int = 0) -> Sample:
        image = self.load_raw_image(index)
        rng = derive_rng(self.seed, "augment", epoch, index)
        image = self.transforms(image, rng)
        target = self._targets[index]
        if isinstance(target, np.ndarray):
            target = target.copy()
        target = self.target_transforms(target)
        return Sample(id=self._ids[index], image=image, target=target)

    def _permutation(self, seed: int, epoch: int) -> np.ndarray:
        if self.shuffle:
            return derive_rng(seed, "shuffle", epoch).permutation(len(self))
        return np.arange(len(self))

    def _iter_samples(self, order, epoch: int):
        if self.num_workers <= 0:
            for idx in order:
                yield self.get_item(int(idx), epoch)
            return
        # Prefetch decodes ahead; futures are consumed in submission order so
        # delivery always equals the permutation order.
        with ThreadPoolExecutor(max_workers=self.num_workers) as pool:
            pending: deque = deque()
            it = iter(order)
            for idx in itertools.islice(it, self.num_workers + 1):
                pending.append(pool.submit(self.get_item, int(idx), epoch))
            while pending:
                done = pending.popleft()
                nxt = next(it, None)
                if nxt is not None:
                    pending.append(pool.submit(self.get_item, int(nxt), epoch))
                yield done.result()

    def iterate_batches(self, seed: int | None = None, epoch: int = 0, ordered: bool = False):
        """Batches of stacked images/targets; the short final batch is kept.

        ``ordered=True`` forces dataset order regardless of the shuffle flag
        (used by evaluation passes).
        """
        seed = self.seed if seed is None else seed
        order = np.arange(len(self)) if ordered else self._permutation(seed, epoch)
        samples = self._iter_samples(order, epoch)
        for start in range(0, len(self), self.batch_size):
            chunk_idx = order[start : start + self.batch_size]
            chunk = [next(samples) for _ in chunk_idx]
            shapes = {s.image.shape for s in chunk}
            if len(shapes) > 1:
                raise ShapeMismatch(
                    f"images in one batch differ in shape: {sorted(shapes)}; "
                    "add a resize transform for variable-size corpora"
                )
            images = np.stack([s.image for s in chunk])
            targets = np.stack([np.asarray(s.target) for s in chunk])
            yield Batch(
                indices=chunk_idx.copy(),
                ids=tuple(s.id for s in chunk),
                images=images,
                targets=targets,
            )

    def data_distribution_table(self) -> DistributionTable:
        counts = np.zeros(self.num_classes, dtype=np.int64)
        for target in self._targets:
            if self.TASK_KIND == MULTI_CLASS:
                counts[int(target)] += 1
            else:
                counts += np.asarray(target, dtype=np.int64)
        rows = tuple((name, int(counts[i])) for i, name in enumerate(self.vocabulary))
        return DistributionTable(rows=rows, total_samples=len(self))


MULTI_CLASS_KIND = MULTI_CLASS
MULTI_LABEL_KIND = MULTI_LABEL
