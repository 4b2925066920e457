"""Stratified train/test split materialization.

The assignment is a pure function of (seed, sample ids): candidate orders are
derived from sorted ids and per-class seeded shuffles, never from on-disk
enumeration order. Multi-class splits are per-class proportional; multi-label
splits use iterative stratification, scarcest label first, under exact global
quotas.
"""

from __future__ import annotations

import os
import shutil

import numpy as np

from ..datasets.multilabel import IMAGE_DIR, LABEL_FILE
from ..errors import DegenerateSplit
from ..metrics.classification import MULTI_CLASS
from ..params import Param
from ..seeding import derive_rng
from .base import Artifact, Task, TaskResult


def _train_quota(fraction: float, count: int) -> int:
    return int(np.floor(fraction * count + 0.5))


def split_multiclass(ids, class_of: dict, class_names, fraction: float, seed: int) -> dict:
    """id → "train"/"test", proportional per class."""
    degenerate = []
    per_class: dict[str, list] = {name: [] for name in class_names}
    for sample_id in ids:
        per_class[class_of[sample_id]].append(sample_id)
    for name in class_names:
        n = len(per_class[name])
        quota = _train_quota(fraction, n)
        if n == 0 or quota == 0 or quota == n:
            degenerate.append(name)
    if degenerate:
        raise DegenerateSplit(degenerate)

    assignment: dict = {}
    for name in class_names:
        members = sorted(per_class[name])
        order = derive_rng(seed, "split", name).permutation(len(members))
        quota = _train_quota(fraction, len(members))
        for rank, idx in enumerate(order):
            assignment[members[idx]] = "train" if rank < quota else "test"
    return assignment


def split_multilabel(ids, targets: np.ndarray, class_names, fraction: float, seed: int) -> dict:
    """Iterative stratification, scarcest label first, exact global quotas."""
    ids = list(ids)
    targets = np.asarray(targets)
    n = len(ids)
    counts = targets.sum(axis=0).astype(int)

    degenerate = []
    for i, name in enumerate(class_names):
        quota = _train_quota(fraction, int(counts[i]))
        if counts[i] == 0 or quota == 0 or quota == counts[i]:
            degenerate.append(name)
    if degenerate:
        raise DegenerateSplit(degenerate)

    remaining = {"train": _train_quota(fraction, n)}
    remaining["test"] = n - remaining["train"]
    need = {
        i: {"train": _train_quota(fraction, int(counts[i]))} for i in range(len(class_names))
    }
    for i in range(len(class_names)):
        need[i]["test"] = int(counts[i]) - need[i]["train"]

    order = np.argsort(ids, kind="stable")
    rank = {ids[int(j)]: pos for pos, j in enumerate(order)}
    row_of = {sample_id: targets[i] for i, sample_id in enumerate(ids)}

    assignment: dict = {}

    def assign(sample_id, side):
        assignment[sample_id] = side
        remaining[side] -= 1
        for li in np.flatnonzero(row_of[sample_id]):
            need[int(li)][side] -= 1

    label_order = sorted(range(len(class_names)), key=lambda i: (counts[i], i))
    for li in label_order:
        candidates = sorted(
            (sid for sid in ids if sid not in assignment and row_of[sid][li] == 1),
            key=rank.__getitem__,
        )
        rng = derive_rng(seed, "split-label", class_names[li])
        for idx in rng.permutation(len(candidates)):
            sid = candidates[int(idx)]
            if need[li]["train"] > need[li]["test"]:
                side = "train"
            elif need[li]["test"] > need[li]["train"]:
                side = "test"
            else:
                side = "train" if remaining["train"] >= remaining["test"] else "test"
            if remaining[side] == 0:
                side = "test" if side == "train" else "train"
            assign(sid, side)

    rest = sorted((sid for sid in ids if sid not in assignment), key=rank.__getitem__)
    rng = derive_rng(seed, "split-rest")
    for idx in rng.permutation(len(rest)):
        sid = rest[int(idx)]
        side = "train" if remaining["train"] > 0 else "test"
        assign(sid, side)

    violated = []
    for i, name in enumerate(class_names):
        got = {"train": 0, "test": 0}
        for sid in ids:
            if row_of[sid][i] == 1:
                got[assignment[sid]] += 1
        if got["train"] == 0 or got["test"] == 0:
            violated.append(name)
    if violated:
        raise DegenerateSplit(violated)
    return assignment


class PrepareSplitTask(Task):
    CLASSNAME = "PrepareSplitTask"
    REQUIRED_SLOTS = ("train_dataset",)  # the source dataset to split
    PARAMS = {
        "train_fraction": Param(
            "float", required=True, exclusive_minimum=0.0, exclusive_maximum=1.0,
            doc="fraction of samples on the train side",
        ),
        "out_root": Param("str", required=True, doc="destination for train/ and test/"),
    }

    def artifact_root(self):
        return self.config["out_root"]

    def execute(self) -> TaskResult:
        dataset = self.train_dataset
        fraction = self.config["train_fraction"]
        out_root = self.config["out_root"]
        names = dataset.vocabulary.names
        ids = list(dataset.ids)

        if dataset.TASK_KIND == MULTI_CLASS:
            class_of = {sid: names[int(dataset.target(i))] for i, sid in enumerate(ids)}
            assignment = split_multiclass(ids, class_of, names, fraction, self.run_seed)
        else:
            targets = np.stack([np.asarray(dataset.target(i)) for i in range(len(dataset))])
            assignment = split_multilabel(ids, targets, names, fraction, self.run_seed)

        self._materialize(dataset, assignment, out_root)
        manifest_path = os.path.join(out_root, "split_manifest.json")
        self.write_json(
            manifest_path,
            {
                "seed": self.run_seed,
                "train_fraction": fraction,
                "assignments": assignment,
            },
        )
        n_train = sum(1 for side in assignment.values() if side == "train")
        return TaskResult(
            status="ok",
            artifacts=(
                Artifact("dataset", os.path.join(out_root, "train")),
                Artifact("dataset", os.path.join(out_root, "test")),
                Artifact("manifest", manifest_path),
            ),
            summary={"train": n_train, "test": len(assignment) - n_train},
        )

    def _materialize(self, dataset, assignment: dict, out_root) -> None:
        if dataset.TASK_KIND == MULTI_CLASS:
            names = dataset.vocabulary.names
            for i, sid in enumerate(dataset.ids):
                side = assignment[sid]
                src = dataset.image_path(i)
                dst_dir = os.path.join(out_root, side, names[int(dataset.target(i))])
                os.makedirs(dst_dir, exist_ok=True)
                shutil.copyfile(src, os.path.join(dst_dir, os.path.basename(src)))
            return

        rows = {"train": [], "test": []}
        for i, sid in enumerate(dataset.ids):
            side = assignment[sid]
            src = dataset.image_path(i)
            dst_dir = os.path.join(out_root, side, IMAGE_DIR)
            os.makedirs(dst_dir, exist_ok=True)
            filename = os.path.basename(src)
            shutil.copyfile(src, os.path.join(dst_dir, filename))
            bits = [str(int(b)) for b in np.asarray(dataset.target(i))]
            rows[side].append(",".join([filename, *bits]))
        header = ",".join(["image", *dataset.vocabulary.names])
        for side in ("train", "test"):
            path = os.path.join(out_root, side, LABEL_FILE)
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(header + "\n")
                for row in rows[side]:
                    fh.write(row + "\n")
