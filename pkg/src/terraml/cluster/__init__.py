from .kmeans import ClusterAssignment, kmeans, nmi
from .pretrain import CycleRecord, deepcluster_pretrain, extract_features, write_cycle_report

__all__ = [
    "ClusterAssignment",
    "kmeans",
    "nmi",
    "CycleRecord",
    "deepcluster_pretrain",
    "extract_features",
    "write_cycle_report",
]
