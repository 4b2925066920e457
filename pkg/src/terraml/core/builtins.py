"""Registration of the built-in components into a registry."""

from __future__ import annotations

from ..datasets import BUILTIN_DATASETS
from ..models.nets import BUILTIN_MODELS
from ..tasks import BUILTIN_TASKS
from ..transforms import BUILTIN_TRANSFORMS
from .registry import REGISTRY, ComponentKind, Registry


def register_builtins(registry: Registry | None = None) -> Registry:
    registry = registry or REGISTRY
    for cls in BUILTIN_TASKS:
        registry.register(ComponentKind.TASK, cls.CLASSNAME, cls)
    for cls in BUILTIN_MODELS:
        registry.register(ComponentKind.MODEL, cls.CLASSNAME, cls)
    for cls in BUILTIN_DATASETS:
        registry.register(ComponentKind.DATASET, cls.CLASSNAME, cls)
    for cls in BUILTIN_TRANSFORMS:
        registry.register(ComponentKind.TRANSFORM, cls.CLASSNAME, cls)
    return registry
