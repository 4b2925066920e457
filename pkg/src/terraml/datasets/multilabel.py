"""Multi-label reader: images/ folder plus a binary label matrix in labels.csv.

labels.csv is UTF-8, comma-separated, first column ``image`` (a filename in
images/), remaining columns class names, cells 0 or 1. Sample order is CSV row
order; the vocabulary is the header order.
"""

from __future__ import annotations

import csv
import os

import numpy as np

from ..errors import DatasetRootMissing, LabelFileMalformed
from ..metrics.classification import MULTI_LABEL
from .base import ImageDataset, LabelVocabulary

LABEL_FILE = "labels.csv"
IMAGE_DIR = "images"


class MultiLabelImageDataset(ImageDataset):
    CLASSNAME = "MultiLabelImageDataset"
    TASK_KIND = MULTI_LABEL

    def _load_index(self) -> None:
        root = os.fspath(self.root)
        image_dir = os.path.join(root, IMAGE_DIR)
        label_file = os.path.join(root, LABEL_FILE)
        if not os.path.isdir(root):
            raise DatasetRootMissing(f"dataset root does not exist: {root}")
        if not os.path.isdir(image_dir) or not os.path.isfile(label_file):
            raise DatasetRootMissing(
                f"expected {IMAGE_DIR}/ and {LABEL_FILE} under {root}"
            )

        with open(label_file, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise LabelFileMalformed(f"{label_file} is empty") from None
            header = [h.strip() for h in header]
            if not header or header[0] != "image":
                raise LabelFileMalformed(
                    f"first header column must be 'image', got {header[:1]!r}"
                )
            class_names = header[1:]
            self._vocabulary = LabelVocabulary(tuple(class_names))

            seen: set[str] = set()
            for row_no, row in enumerate(reader, start=2):
                if not row or (len(row) == 1 and not row[0].strip()):
                    continue
                if len(row) != len(header):
                    raise LabelFileMalformed(
                        f"expected {len(header)} cells, got {len(row)}", row=row_no
                    )
                filename = row[0].strip()
                if filename in seen:
                    raise LabelFileMalformed(f"duplicate filename {filename!r}", row=row_no)
                seen.add(filename)
                bits = np.zeros(len(class_names), dtype=np.float64)
                for col, cell in enumerate(row[1:]):
                    cell = cell.strip()
                    if cell not in ("0", "1"):
                        raise LabelFileMalformed(
                            f"cell must be 0 or 1, got {cell!r}",
                            row=row_no,
                            column=class_names[col],
                        )
                    bits[col] = float(cell)
                self._ids.append(os.path.splitext(filename)[0])
                self._paths.append(os.path.join(image_dir, filename))
                self._targets.append(bits)
