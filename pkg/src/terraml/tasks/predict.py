"""Batch prediction over a directory of external images."""

from __future__ import annotations

import logging
import os

from ..datasets.imageio import image_loader
from ..errors import ImageDecodeError, ImageFileMissing, UnsupportedBitDepth
from ..models.checkpoint import checkpoint_path, load_checkpoint
from ..params import Param
from .base import Artifact, Task, TaskResult
from .figures import annotated_image

logger = logging.getLogger("terraml")

_EXTENSIONS = (".png", ".jpg", ".jpeg", ".tif", ".tiff")


class PredictTask(Task):
    CLASSNAME = "PredictTask"
    PARAMS = {
        "model_directory": Param("str", required=True, doc="directory holding the run"),
        "run_id": Param("str", default="1", doc="run identifier"),
        "epoch": Param("int", minimum=1, doc="explicit epoch; absent means 'best'"),
        "images_directory": Param("str", required=True, doc="folder of images to predict"),
        "output_directory": Param("str", required=True, doc="where predictions.csv lands"),
        "save_figures": Param("bool", default=False, doc="emit annotated PNG per image"),
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
        images_dir = self.config["images_directory"]
        out_dir = self.config["output_directory"]
        os.makedirs(out_dir, exist_ok=True)
        files = sorted(
            f for f in os.listdir(images_dir) if f.lower().endswith(_EXTENSIONS)
        ) if os.path.isdir(images_dir) else []

        rows = []
        failures: list[dict] = []
        figures: list[Artifact] = []
        for filename in files:
            path = os.path.join(images_dir, filename)
            try:
                image = image_loader(path)
                labels, probs = model.predict_image(image)
            except (ImageDecodeError, ImageFileMissing, UnsupportedBitDepth) as exc:
                # External folders are untrusted input: record and move on.
                failures.append({"image": filename, "error": str(exc)})
                logger.warning("skipping %s: %s", filename, exc)
                continue
            rows.append((filename, probs, labels))
            if self.config["save_figures"]:
                fig_path = os.path.join(out_dir, os.path.splitext(filename)[0] + "_labels.png")
                annotated_image(image, ", ".join(labels) if labels else "(no labels)", fig_path)
                figures.append(Artifact("figure", fig_path))

        csv_path = os.path.join(out_dir, "predictions.csv")
        with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("image," + ",".join(model.class_names) + ",labels\n")
            for filename, probs, labels in rows:
                cells = ",".join(repr(float(p)) for p in probs)
                fh.write(f"{filename},{cells},{';'.join(labels)}\n")

        return TaskResult(
            status="ok",
            artifacts=(Artifact("predictions", csv_path), *figures),
            summary={
                "predicted": len(rows),
                "failed": len(failures),
                "failures": failures,
            },
        )
