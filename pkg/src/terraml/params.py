"""Declarative parameter schemas for registrable components.

Every component class (task, model, dataset, transform) carries a ``PARAMS``
mapping of parameter name to :class:`Param`. The config validator walks these
to type-check, range-check and default-fill component configs, and the schema
documentation is generated from the same declarations.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from typing import Any

from .errors import SchemaError

_MISSING = object()


@dataclass(frozen=True)
class Param:
    """One config parameter: JSON type, range and default."""

    type: str  # "int" | "float" | "bool" | "str" | "list" | "map"
    required: bool = False
    default: Any = None
    minimum: float | None = None
    maximum: float | None = None
    exclusive_minimum: float | None = None
    exclusive_maximum: float | None = None
    doc: str = ""


def _check_type(value, kind: str, path: str):
    if kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            raise SchemaError(f"expected integer, got {value!r}", path)
        return value
    if kind == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"expected number, got {value!r}", path)
        return float(value)
    if kind == "bool":
        if not isinstance(value, bool):
            raise SchemaError(f"expected boolean, got {value!r}", path)
        return value
    if kind == "str":
        if not isinstance(value, str):
            raise SchemaError(f"expected string, got {value!r}", path)
        return value
    if kind == "list":
        if not isinstance(value, list):
            raise SchemaError(f"expected list, got {value!r}", path)
        return value
    if kind == "map":
        if not isinstance(value, dict):
            raise SchemaError(f"expected object, got {value!r}", path)
        return value
    raise ValueError(f"unknown param type {kind!r}")


def _check_range(value, spec: Param, path: str):
    if spec.type not in ("int", "float"):
        return
    if spec.minimum is not None and value < spec.minimum:
        raise SchemaError(f"value {value} below minimum {spec.minimum}", path)
    if spec.maximum is not None and value > spec.maximum:
        raise SchemaError(f"value {value} above maximum {spec.maximum}", path)
    if spec.exclusive_minimum is not None and value <= spec.exclusive_minimum:
        raise SchemaError(f"value {value} must be > {spec.exclusive_minimum}", path)
    if spec.exclusive_maximum is not None and value >= spec.exclusive_maximum:
        raise SchemaError(f"value {value} must be < {spec.exclusive_maximum}", path)


def validate_params(config: dict, schema: dict[str, Param], path: str) -> dict:
    """Validated copy of ``config`` with defaults filled in.

    Unknown keys are an error, not ignored: they are almost always typos in
    experiment configs.
    """
    if not isinstance(config, dict):
        raise SchemaError(f"expected object, got {config!r}", path)
    out: dict[str, Any] = {}
    for key in config:
        if key not in schema:
            raise SchemaError(f"unknown config key {key!r}", f"{path}.{key}")
    for name, spec in schema.items():
        where = f"{path}.{name}"
        if name in config and config[name] is not None:
            value = _check_type(config[name], spec.type, where)
            _check_range(value, spec, where)
            out[name] = value
        elif spec.required:
            raise SchemaError(f"missing required parameter {name!r}", where)
        else:
            # JSON null counts as absent: the default applies.
            out[name] = copy.deepcopy(spec.default)
    return out
