from .classification import (
    MULTI_CLASS,
    MULTI_LABEL,
    ConfusionCounts,
    MetricReport,
    accuracy,
    compute_report,
    confusion_counts,
    one_hot,
    precision_recall_f1,
)
from .events import EventLogContents, EventLogWriter, EventRecord, read_event_log

__all__ = [
    "MULTI_CLASS",
    "MULTI_LABEL",
    "ConfusionCounts",
    "MetricReport",
    "accuracy",
    "compute_report",
    "confusion_counts",
    "one_hot",
    "precision_recall_f1",
    "EventLogContents",
    "EventLogWriter",
    "EventRecord",
    "read_event_log",
]
