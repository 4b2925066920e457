from .checkpoint import (
    FORMAT_VERSION,
    checkpoint_path,
    find_checkpoint_dir,
    load_checkpoint,
    load_weights,
    parameter_checksum,
    read_manifest,
    save_checkpoint,
    save_weights,
    sha256_file,
)
from .losses import compute_loss, loss_and_grad, sigmoid, softmax
from .nets import (
    BUILTIN_MODELS,
    BaseModel,
    ReferenceMLPMultiClass,
    ReferenceMLPMultiLabel,
    SmallCNNMultiClass,
    SmallCNNMultiLabel,
)
from .optim import Adam
from .training import EpochRecord, TrainingHistory, evaluate_model, train_and_evaluate

__all__ = [
    "FORMAT_VERSION",
    "checkpoint_path",
    "find_checkpoint_dir",
    "load_checkpoint",
    "load_weights",
    "parameter_checksum",
    "read_manifest",
    "save_checkpoint",
    "save_weights",
    "sha256_file",
    "compute_loss",
    "loss_and_grad",
    "sigmoid",
    "softmax",
    "BUILTIN_MODELS",
    "BaseModel",
    "ReferenceMLPMultiClass",
    "ReferenceMLPMultiLabel",
    "SmallCNNMultiClass",
    "SmallCNNMultiLabel",
    "Adam",
    "EpochRecord",
    "TrainingHistory",
    "evaluate_model",
    "train_and_evaluate",
]
