"""Dataset inspection: class distribution and sample figures."""

from __future__ import annotations

import os

from ..datasets.inspect import show_image
from ..params import Param
from .base import Artifact, Task, TaskResult
from .figures import bar_chart


class InspectTask(Task):
    CLASSNAME = "InspectTask"
    REQUIRED_SLOTS = ("train_dataset",)  # the dataset to inspect
    PARAMS = {
        "output_directory": Param("str", required=True, doc="where reports and figures land"),
        "show_indices": Param("list", default=[], doc="sample indices to render as figures"),
    }

    def artifact_root(self):
        return self.config["output_directory"]

    def execute(self) -> TaskResult:
        dataset = self.train_dataset
        out_dir = self.config["output_directory"]
        os.makedirs(out_dir, exist_ok=True)

        table = dataset.data_distribution_table()
        csv_path = os.path.join(out_dir, "distribution.csv")
        table.write_csv(csv_path)
        chart_path = os.path.join(out_dir, "distribution.png")
        bar_chart(
            [name for name, _ in table.rows],
            [count for _, count in table.rows],
            chart_path,
            title=f"Class distribution ({table.total_samples} samples)",
            ylabel="samples",
        )

        figures = []
        rendered = []
        for index in self.config["show_indices"]:
            out_path = os.path.join(out_dir, f"sample_{int(index)}.png")
            meta = show_image(dataset, int(index), out_path)
            figures.append(Artifact("figure", out_path))
            rendered.append({"index": int(index), "labels": meta["labels"]})

        return TaskResult(
            status="ok",
            artifacts=(
                Artifact("distribution", csv_path),
                Artifact("figure", chart_path),
                *figures,
            ),
            summary={
                "total_samples": table.total_samples,
                "counts": {name: count for name, count in table.rows},
                "rendered": rendered,
            },
        )
