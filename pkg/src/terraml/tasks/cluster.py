"""Cluster-pretraining workflow."""

from __future__ import annotations

import os

from ..cluster.pretrain import deepcluster_pretrain, write_cycle_report
from ..metrics.events import EventLogWriter
from ..models.checkpoint import save_checkpoint
from ..params import Param
from .base import Artifact, Task, TaskResult


class ClusterPretrainTask(Task):
    CLASSNAME = "ClusterPretrainTask"
    REQUIRED_SLOTS = ("model", "train_dataset")
    PARAMS = {
        "k": Param("int", required=True, minimum=2, doc="number of pseudo-classes"),
        "cycles": Param("int", required=True, minimum=0, doc="cluster/train alternations"),
        "epochs_per_cycle": Param("int", required=True, minimum=1, doc="epochs per cycle"),
        "model_directory": Param("str", required=True, doc="artifact directory"),
        "run_id": Param("str", default="pretrain", doc="run identifier"),
    }

    def artifact_root(self):
        return os.path.join(self.config["model_directory"], self.config["run_id"])

    def execute(self) -> TaskResult:
        run_id = self.config["run_id"]
        run_dir = os.path.join(self.config["model_directory"], run_id)
        os.makedirs(run_dir, exist_ok=True)
        events_path = os.path.join(run_dir, "events.jsonl")
        with EventLogWriter(events_path, mode="w") as events:
            model, records = deepcluster_pretrain(
                self.model,
                self.train_dataset,
                k=self.config["k"],
                cycles=self.config["cycles"],
                epochs_per_cycle=self.config["epochs_per_cycle"],
                seed=self.run_seed,
                event_writer=events,
                run_id=run_id,
            )
        report_path = os.path.join(run_dir, "cycle_report.csv")
        write_cycle_report(records, report_path)
        backbone_dir = os.path.join(run_dir, "backbone")
        save_checkpoint(
            model,
            backbone_dir,
            epoch=0,
            run_id=run_id,
            metrics={"cycles": self.config["cycles"], "k": self.config["k"]},
        )
        return TaskResult(
            status="ok",
            artifacts=(
                Artifact("report", report_path),
                Artifact("events", events_path),
                Artifact("checkpoint", backbone_dir),
            ),
            summary={
                "cycles": self.config["cycles"],
                "final_inertia": records[-1].inertia if records else None,
                "final_nmi_vs_prev": records[-1].nmi_vs_prev if records else None,
            },
        )
