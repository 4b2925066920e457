"""Train-and-evaluate workflow."""

from __future__ import annotations

import os

from ..models.training import train_and_evaluate
from ..params import Param
from .base import Artifact, Task, TaskResult
from .figures import bar_chart


class TrainAndEvaluateTask(Task):
    CLASSNAME = "TrainAndEvaluateTask"
    REQUIRED_SLOTS = ("model", "train_dataset", "val_dataset")
    PARAMS = {
        "epochs": Param("int", required=True, minimum=1, doc="training epochs"),
        "model_directory": Param("str", required=True, doc="checkpoint/artifact directory"),
        "run_id": Param("str", default="1", doc="run identifier inside model_directory"),
    }

    def artifact_root(self):
        return os.path.join(self.config["model_directory"], self.config["run_id"])

    def execute(self) -> TaskResult:
        run_id = self.config["run_id"]
        history = train_and_evaluate(
            self.model,
            train_dataset=self.train_dataset,
            val_dataset=self.val_dataset,
            epochs=self.config["epochs"],
            model_directory=self.config["model_directory"],
            run_id=run_id,
        )
        run_dir = history.run_dir
        final = history.records[-1]
        report_path = os.path.join(run_dir, "report.json")
        self.write_json(report_path, final.report.to_dict())
        figure_path = os.path.join(run_dir, "f1_per_class.png")
        bar_chart(
            final.report.class_names,
            final.report.f1,
            figure_path,
            title=f"Per-class F1 (epoch {final.epoch})",
            ylabel="F1",
        )
        metric_name, metric_value = final.report.primary_metric
        best_value = history.records[history.best_epoch - 1].report.primary_metric[1]
        artifacts = (
            Artifact("events", os.path.join(run_dir, "events.jsonl")),
            Artifact("checkpoint", os.path.join(run_dir, f"epoch_{final.epoch}")),
            Artifact("checkpoint", os.path.join(run_dir, "best")),
            Artifact("report", report_path),
            Artifact("figure", figure_path),
        )
        summary = {
            "epochs": self.config["epochs"],
            "best_epoch": history.best_epoch,
            f"best_{metric_name}": best_value,
            f"final_{metric_name}": metric_value,
            "final_train_loss": final.train_loss,
        }
        return TaskResult(status="ok", artifacts=artifacts, summary=summary)
