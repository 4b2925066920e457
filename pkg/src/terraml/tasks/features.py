"""Feature extraction to CSV."""

from __future__ import annotations

import os

from ..cluster.pretrain import extract_features
from ..models.checkpoint import checkpoint_path, load_checkpoint
from ..params import Param
from .base import Artifact, Task, TaskResult


class ExtractFeaturesTask(Task):
    CLASSNAME = "ExtractFeaturesTask"
    REQUIRED_SLOTS = ("train_dataset",)  # the dataset to embed
    PARAMS = {
        "model_directory": Param("str", required=True, doc="directory holding the run"),
        "run_id": Param("str", default="1", doc="run identifier"),
        "epoch": Param("int", minimum=1, doc="explicit epoch; absent means 'best'"),
        "output_directory": Param("str", required=True, doc="where features.csv lands"),
    }

    def artifact_root(self):
        return self.config["output_directory"]

    def execute(self) -> TaskResult:
        epoch = self.config["epoch"]
        model = load_checkpoint(
            checkpoint_path(
                self.config["model_directory"],
                self.config["run_id"],
                "best" if epoch is None else epoch,
            )
        )
        dataset = self.train_dataset
        feats = extract_features(model, dataset)
        out_dir = self.config["output_directory"]
        os.makedirs(out_dir, exist_ok=True)
        csv_path = os.path.join(out_dir, "features.csv")
        with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("id," + ",".join(f"f{j}" for j in range(feats.shape[1])) + "\n")
            for sample_id, row in zip(dataset.ids, feats):
                fh.write(sample_id + "," + ",".join(repr(float(v)) for v in row) + "\n")
        return TaskResult(
            status="ok",
            artifacts=(Artifact("features", csv_path),),
            summary={"rows": int(feats.shape[0]), "dimensions": int(feats.shape[1])},
        )
