"""Run configuration validation.

A run configuration is a JSON document with top-level keys ``task``,
``model``, ``train_dataset``, ``val_dataset`` and ``seed``; each component
slot is ``{"classname": ..., "config": {...}}``. Validation resolves every
classname, type/range-checks every parameter against the component's declared
schema, fills defaults in place (so the persisted run manifest is
self-describing) and reports errors with the offending config path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..errors import ParseError, SchemaError, UnknownComponent
from ..params import Param, validate_params
from .registry import REGISTRY, ComponentKind, Registry

COMPONENT_SLOTS = ("model", "train_dataset", "val_dataset")
TOP_LEVEL_KEYS = ("task", *COMPONENT_SLOTS, "seed")

# Config keys that hold transform spec lists, with the transform family they
# accept and whether seeded-random transforms are allowed there.
_TRANSFORM_KEYS = {
    "transforms": "image",
    "target_transforms": "target",
    "eval_transforms": "image",
}

SEED_DEFAULT = 42


@dataclass(frozen=True)
class ComponentSpec:
    classname: str
    config: dict

    def to_dict(self) -> dict:
        return {"classname": self.classname, "config": self.config}


@dataclass(frozen=True)
class RunConfig:
    task: ComponentSpec
    model: ComponentSpec | None
    train_dataset: ComponentSpec | None
    val_dataset: ComponentSpec | None
    seed: int

    def to_dict(self) -> dict:
        out: dict = {"task": self.task.to_dict()}
        for slot in COMPONENT_SLOTS:
            spec = getattr(self, slot)
            if spec is not None:
                out[slot] = spec.to_dict()
        out["seed"] = self.seed
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def parse_config(text: str) -> dict:
    """JSON text → document, or ParseError."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"configuration is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ParseError(f"configuration must be a JSON object, got {type(raw).__name__}")
    return raw


def load_config_file(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read configuration file {path}: {exc}") from exc
    return parse_config(text)


def _validate_spec_shape(slot: str, value) -> tuple[str, dict]:
    if not isinstance(value, dict):
        raise SchemaError(f"expected object with classname/config, got {value!r}", slot)
    for key in value:
        if key not in ("classname", "config"):
            raise SchemaError(f"unknown key {key!r} in component slot", f"{slot}.{key}")
    classname = value.get("classname")
    if not isinstance(classname, str) or not classname:
        raise SchemaError("classname must be a non-empty string", f"{slot}.classname")
    config = value.get("config", {})
    if not isinstance(config, dict):
        raise SchemaError(f"config must be an object, got {config!r}", f"{slot}.config")
    return classname, config


def _validate_transform_list(specs, path: str, registry: Registry, family: str, allow_random: bool):
    if specs is None:
        return None
    validated = []
    for i, spec in enumerate(specs):
        where = f"{path}[{i}]"
        if not isinstance(spec, dict):
            raise SchemaError(f"transform spec must be an object, got {spec!r}", where)
        for key in spec:
            if key not in ("name", "params"):
                raise SchemaError(f"unknown key {key!r} in transform spec", f"{where}.{key}")
        name = spec.get("name")
        if not isinstance(name, str) or not name:
            raise SchemaError("transform name must be a non-empty string", f"{where}.name")
        try:
            cls = registry.resolve(ComponentKind.TRANSFORM, name)
        except UnknownComponent as exc:
            exc.path = f"{where}.name"
            raise
        applies_to = getattr(cls, "APPLIES_TO", "image")
        if applies_to != family:
            raise SchemaError(
                f"{name} is a {applies_to} transform, not allowed in this list", where
            )
        if not allow_random and getattr(cls, "RANDOM", False):
            raise SchemaError(
                f"{name} is a random transform; evaluation pipelines must be "
                "augmentation-free",
                where,
            )
        params = spec.get("params", {})
        if not isinstance(params, dict):
            raise SchemaError(f"params must be an object, got {params!r}", f"{where}.params")
        validated.append(
            {"name": name, "params": validate_params(params, cls.PARAMS, f"{where}.params")}
        )
    return validated


def _validate_component(
    slot: str, classname: str, config: dict, kind: ComponentKind, registry: Registry,
    allow_random_transforms: bool,
) -> ComponentSpec:
    try:
        cls = registry.resolve(kind, classname)
    except UnknownComponent as exc:
        exc.path = f"{slot}.classname"
        raise
    schema: dict[str, Param] = getattr(cls, "PARAMS", {})
    validated = validate_params(config, schema, f"{slot}.config")
    for key, family in _TRANSFORM_KEYS.items():
        if key in validated:
            allow_random = allow_random_transforms and key == "transforms"
            validated[key] = _validate_transform_list(
                validated[key], f"{slot}.config.{key}", registry, family, allow_random
            )
    return ComponentSpec(classname=classname, config=validated)


def validate_config(raw, registry: Registry | None = None) -> RunConfig:
    """Validated RunConfig with every default filled in.

    ``raw`` is a parsed configuration document (or JSON text). Validation is
    idempotent: validating the dict form of a returned RunConfig yields an
    equal RunConfig.
    """
    registry = registry or REGISTRY
    if isinstance(raw, (str, bytes)):
        raw = parse_config(raw if isinstance(raw, str) else raw.decode("utf-8"))
    if not isinstance(raw, dict):
        raise ParseError(f"configuration must be a mapping, got {type(raw).__name__}")

    for key in raw:
        if key not in TOP_LEVEL_KEYS:
            raise SchemaError(f"unknown top-level key {key!r}", key)
    if "task" not in raw:
        raise SchemaError("missing required slot 'task'", "task")

    task_classname, task_config = _validate_spec_shape("task", raw["task"])
    try:
        task_cls = registry.resolve(ComponentKind.TASK, task_classname)
    except UnknownComponent as exc:
        exc.path = "task.classname"
        raise

    required = tuple(getattr(task_cls, "REQUIRED_SLOTS", ()))
    optional = tuple(getattr(task_cls, "OPTIONAL_SLOTS", ()))
    used = set(required) | set(optional)
    for slot in required:
        if slot not in raw:
            raise SchemaError(
                f"task {task_classname} requires the {slot!r} slot", slot
            )
    for slot in COMPONENT_SLOTS:
        if slot in raw and slot not in used:
            raise SchemaError(
                f"slot {slot!r} is not used by task {task_classname}", slot
            )

    task_spec = ComponentSpec(
        classname=task_classname,
        config=validate_params(task_config, getattr(task_cls, "PARAMS", {}), "task.config"),
    )

    slot_specs: dict[str, ComponentSpec | None] = {}
    for slot in COMPONENT_SLOTS:
        if slot not in raw:
            slot_specs[slot] = None
            continue
        classname, config = _validate_spec_shape(slot, raw[slot])
        kind = ComponentKind.MODEL if slot == "model" else ComponentKind.DATASET
        slot_specs[slot] = _validate_component(
            slot,
            classname,
            config,
            kind,
            registry,
            # Random augmentation only belongs in the training pipeline.
            allow_random_transforms=(slot == "train_dataset"),
        )

    seed = raw.get("seed", SEED_DEFAULT)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise SchemaError(f"seed must be an integer, got {seed!r}", "seed")
    if seed < 0:
        raise SchemaError(f"seed must be >= 0, got {seed}", "seed")

    return RunConfig(
        task=task_spec,
        model=slot_specs["model"],
        train_dataset=slot_specs["train_dataset"],
        val_dataset=slot_specs["val_dataset"],
        seed=seed,
    )
