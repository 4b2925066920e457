"""Multi-class reader: one subdirectory per class, images inside.

The vocabulary is the sorted subdirectory names; a sample's target is its
directory's index. Sample order is (class order, then sorted filename).
"""

from __future__ import annotations

import os
import warnings

from ..errors import DatasetRootMissing, EmptyClassDirectoryWarning
from ..metrics.classification import MULTI_CLASS
from .base import ImageDataset, LabelVocabulary

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg", ".tif", ".tiff")


class MultiClassImageDataset(ImageDataset):
    CLASSNAME = "MultiClassImageDataset"
    TASK_KIND = MULTI_CLASS

    def _load_index(self) -> None:
        root = os.fspath(self.root)
        if not os.path.isdir(root):
            raise DatasetRootMissing(f"dataset root does not exist: {root}")
        class_dirs = sorted(
            d for d in os.listdir(root) if os.path.isdir(os.path.join(root, d))
        )
        if not class_dirs:
            raise DatasetRootMissing(f"no class directories under {root}")
        self._vocabulary = LabelVocabulary(tuple(class_dirs))

        per_class_files: dict[str, list[str]] = {}
        stem_owners: dict[str, int] = {}
        for class_name in class_dirs:
            files = sorted(
                f
                for f in os.listdir(os.path.join(root, class_name))
                if f.lower().endswith(IMAGE_EXTENSIONS)
            )
            if not files:
                warnings.warn(
                    f"class directory {class_name!r} holds no images; kept with count 0",
                    EmptyClassDirectoryWarning,
                    stacklevel=3,
                )
            per_class_files[class_name] = files
            for f in files:
                stem = os.path.splitext(f)[0]
                stem_owners[stem] = stem_owners.get(stem, 0) + 1

        for class_index, class_name in enumerate(class_dirs):
            for filename in per_class_files[class_name]:
                stem = os.path.splitext(filename)[0]
                # Duplicate stems across class folders get the class prefix.
                sample_id = stem if stem_owners[stem] == 1 else f"{class_name}_{stem}"
                self._ids.append(sample_id)
                self._paths.append(os.path.join(root, class_name, filename))
                self._targets.append(class_index)
