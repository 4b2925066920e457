from .base import Batch, DistributionTable, ImageDataset, LabelVocabulary, Sample
from .imageio import image_loader
from .inspect import sample_label_names, show_image
from .multiclass import MultiClassImageDataset
from .multilabel import MultiLabelImageDataset

BUILTIN_DATASETS = (MultiLabelImageDataset, MultiClassImageDataset)

__all__ = [
    "Batch",
    "DistributionTable",
    "ImageDataset",
    "LabelVocabulary",
    "Sample",
    "image_loader",
    "sample_label_names",
    "show_image",
    "MultiClassImageDataset",
    "MultiLabelImageDataset",
    "BUILTIN_DATASETS",
]
