"""Turning a validated RunConfig into an executable task.

Construction order is datasets → model → task. Every component gets its own
seed derived from (run seed, slot index), so adding or reordering unrelated
components never shifts another component's randomness.
"""

from __future__ import annotations

from ..errors import DatasetRootMissing, TerramlError
from ..seeding import derive_seed
from .registry import REGISTRY, ComponentKind, Registry
from .schema import RunConfig

_SLOT_INDEX = {"train_dataset": 0, "val_dataset": 1, "model": 2, "task": 3}


def _attach_path(exc: TerramlError, slot: str) -> None:
    if exc.path is None:
        if isinstance(exc, DatasetRootMissing):
            exc.path = f"{slot}.config.root"
        else:
            exc.path = f"{slot}.config"


def _build_transforms(specs, registry: Registry):
    return [
        registry.resolve(ComponentKind.TRANSFORM, spec["name"])(**spec["params"])
        for spec in specs or []
    ]


def _build_dataset(spec, slot: str, seed: int, registry: Registry):
    cls = registry.resolve(ComponentKind.DATASET, spec.classname)
    params = dict(spec.config)
    transforms = _build_transforms(params.pop("transforms", []), registry)
    target_transforms = _build_transforms(params.pop("target_transforms", []), registry)
    try:
        return cls(
            **params,
            transforms=transforms,
            target_transforms=target_transforms,
            seed=derive_seed(seed, _SLOT_INDEX[slot]),
        )
    except TerramlError as exc:
        _attach_path(exc, slot)
        raise


def instantiate_run(cfg: RunConfig, registry: Registry | None = None):
    """Constructs datasets, model and task; all randomness derives from cfg.seed."""
    registry = registry or REGISTRY

    datasets = {}
    for slot in ("train_dataset", "val_dataset"):
        spec = getattr(cfg, slot)
        datasets[slot] = _build_dataset(spec, slot, cfg.seed, registry) if spec else None

    model = None
    if cfg.model is not None:
        cls = registry.resolve(ComponentKind.MODEL, cfg.model.classname)
        try:
            model = cls(cfg.model.config)
            model.prepare(seed=derive_seed(cfg.seed, _SLOT_INDEX["model"]))
        except TerramlError as exc:
            _attach_path(exc, "model")
            raise
        reference = datasets["train_dataset"] or datasets["val_dataset"]
        if (
            model.has_default_class_names
            and reference is not None
            and reference.num_classes == model.num_classes
        ):
            model.set_class_names(reference.vocabulary.names)

    task_cls = registry.resolve(ComponentKind.TASK, cfg.task.classname)
    try:
        return task_cls(
            config=cfg.task.config,
            model=model,
            train_dataset=datasets["train_dataset"],
            val_dataset=datasets["val_dataset"],
            seed=derive_seed(cfg.seed, _SLOT_INDEX["task"]),
            run_seed=cfg.seed,
            run_config=cfg,
        )
    except TerramlError as exc:
        _attach_path(exc, "task")
        raise
