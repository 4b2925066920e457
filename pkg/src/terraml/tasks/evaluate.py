"""Evaluation of a saved checkpoint over a dataset."""

from __future__ import annotations

import os

from ..models.checkpoint import checkpoint_path, load_checkpoint
from ..models.training import evaluate_model
from ..params import Param
from .base import Artifact, Task, TaskResult


class EvaluateTask(Task):
    CLASSNAME = "EvaluateTask"
    REQUIRED_SLOTS = ("val_dataset",)
    PARAMS = {
        "model_directory": Param("str", required=True, doc="directory holding the run"),
        "run_id": Param("str", default="1", doc="run identifier"),
        "epoch": Param("int", minimum=1, doc="explicit epoch; absent means 'best'"),
        "output_directory": Param(
            "str", doc="report destination; default <model_directory>/<run_id>/evaluation"
        ),
    }

    def _checkpoint_dir(self):
        epoch = self.config["epoch"]
        return checkpoint_path(
            self.config["model_directory"],
            self.config["run_id"],
            "best" if epoch is None else epoch,
        )

    def _output_dir(self):
        return self.config["output_directory"] or os.path.join(
            self.config["model_directory"], self.config["run_id"], "evaluation"
        )

    def artifact_root(self):
        return self._output_dir()

    def execute(self) -> TaskResult:
        model = load_checkpoint(
            self._checkpoint_dir(), expected_num_classes=self.val_dataset.num_classes
        )
        report = evaluate_model(model, self.val_dataset)
        out_dir = self._output_dir()
        report_path = os.path.join(out_dir, "report.json")
        self.write_json(report_path, report.to_dict())
        name, value = report.primary_metric
        return TaskResult(
            status="ok",
            artifacts=(Artifact("report", report_path),),
            summary={name: value, report.accuracy_name: report.accuracy,
                     "micro_f1": report.micro_f1, "macro_f1": report.macro_f1},
        )
