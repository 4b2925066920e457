from .base import Artifact, Task, TaskResult
from .cluster import ClusterPretrainTask
from .evaluate import EvaluateTask
from .features import ExtractFeaturesTask
from .inspect import InspectTask
from .predict import PredictTask
from .split import PrepareSplitTask, split_multiclass, split_multilabel
from .train import TrainAndEvaluateTask

BUILTIN_TASKS = (
    TrainAndEvaluateTask,
    EvaluateTask,
    PredictTask,
    PrepareSplitTask,
    ExtractFeaturesTask,
    ClusterPretrainTask,
    InspectTask,
)

__all__ = [
    "Artifact",
    "Task",
    "TaskResult",
    "ClusterPretrainTask",
    "EvaluateTask",
    "ExtractFeaturesTask",
    "InspectTask",
    "PredictTask",
    "PrepareSplitTask",
    "TrainAndEvaluateTask",
    "split_multiclass",
    "split_multilabel",
    "BUILTIN_TASKS",
]
